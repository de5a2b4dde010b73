#include "voxelvol/strata.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

namespace voxelvol {

namespace {

std::vector<CubeSphereTriangle> build_triangles() {
  std::vector<CubeSphereTriangle> out;
  int axes[3];
  for (axes[0] = 0; axes[0] < 3; ++axes[0])
    for (axes[1] = 0; axes[1] < 3; ++axes[1])
      for (axes[2] = 0; axes[2] < 3; ++axes[2]) {
        if (axes[0] == axes[1] || axes[0] == axes[2] || axes[1] == axes[2]) continue;
        for (int signs = 0; signs < 8; ++signs) {
          Vec3 va{0, 0, 0}, vb{0, 0, 0}, vc{0, 0, 0};
          va[axes[0]] = (signs & 1) ? -1.0 : 1.0;
          vb[axes[1]] = (signs & 2) ? -1.0 : 1.0;
          vc[axes[2]] = (signs & 4) ? -1.0 : 1.0;
          Vec3 mid_ab = normalized(va + vb);
          Vec3 cut = normalized(2.0 * va + vb + vc);  // edge [va, diag] hits
                                                      // <-va+vb+vc, n> = 0 here
          Vec3 diag = normalized(va + vb + vc);
          out.push_back({{va, mid_ab, cut}, 1});
          out.push_back({{mid_ab, cut, diag}, 2});
        }
      }
  return out;
}

}  // namespace

const std::vector<CubeSphereTriangle>& cube_sphere_triangles() {
  static const std::vector<CubeSphereTriangle> tris = build_triangles();
  return tris;
}

const std::vector<std::pair<double, double>>& cube_circle_arcs() {
  static const std::vector<std::pair<double, double>> arcs = [] {
    std::vector<std::pair<double, double>> a;
    for (int k = 0; k < 8; ++k) a.emplace_back(k * kPi / 4.0, (k + 1) * kPi / 4.0);
    return a;
  }();
  return arcs;
}

const std::vector<Vec3>& cube_vertex_differences(int dim) {
  static std::vector<Vec3> d2, d3;
  static std::once_flag once;
  std::call_once(once, [] {
    for (int dim_ : {2, 3}) {
      auto& out = dim_ == 2 ? d2 : d3;
      int nv = 1 << dim_;
      for (int i = 0; i < nv; ++i)
        for (int j = 0; j < nv; ++j) {
          if (i == j) continue;
          Vec3 v{0, 0, 0};
          for (int k = 0; k < dim_; ++k)
            v[k] = static_cast<double>((i >> k) & 1) - static_cast<double>((j >> k) & 1);
          out.push_back(v);
        }
    }
  });
  return dim == 2 ? d2 : d3;
}

std::vector<double> circle_breakpoints(const Vec3& e, const Vec3& f, int dim) {
  std::vector<double> angles;
  for (const Vec3& v : cube_vertex_differences(dim)) {
    double a = dot(v, e), b = dot(v, f);
    if (std::abs(a) < 1e-14 && std::abs(b) < 1e-14) continue;  // v orthogonal to circle
    // a cos(t) + b sin(t) = 0  =>  t = atan2(-a, b) mod pi
    double t = std::atan2(-a, b);
    for (double cand : {t, t + kPi}) {
      double c = std::fmod(cand + 4.0 * kPi, 2.0 * kPi);
      angles.push_back(c);
    }
  }
  angles.push_back(0.0);
  angles.push_back(2.0 * kPi);
  std::sort(angles.begin(), angles.end());
  angles.erase(std::unique(angles.begin(), angles.end(),
                           [](double x, double y) { return std::abs(x - y) < 1e-12; }),
               angles.end());
  return angles;
}

}  // namespace voxelvol
