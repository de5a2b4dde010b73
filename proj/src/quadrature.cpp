#include "voxelvol/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace voxelvol {

namespace {

struct GaussRule {
  std::vector<double> nodes, weights;
};

GaussRule compute_gauss(int n) {
  GaussRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = r.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
  }
  return r;
}

const GaussRule& gauss_rule(int order) {
  static std::map<int, GaussRule> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, compute_gauss(order)).first;
  return it->second;
}

}  // namespace

const std::vector<double>& gauss_nodes(int order) { return gauss_rule(order).nodes; }
const std::vector<double>& gauss_weights(int order) { return gauss_rule(order).weights; }

double integrate_segment(const std::function<double(double)>& f, double a, double b,
                         int order) {
  const GaussRule& r = gauss_rule(order);
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double sum = 0.0;
  for (int i = 0; i < order; ++i) sum += r.weights[i] * f(mid + half * r.nodes[i]);
  return half * sum;
}

QuadResult integrate_segment_adaptive(const std::function<double(double)>& f, double a,
                                      double b, double tol, int max_depth) {
  struct Rec {
    static QuadResult go(const std::function<double(double)>& f, double a, double b,
                         double coarse, double tol, int depth) {
      double m = 0.5 * (a + b);
      double left = integrate_segment(f, a, m);
      double right = integrate_segment(f, m, b);
      double fine = left + right;
      double err = std::abs(fine - coarse);
      if (err <= tol || depth <= 0) return {fine, err};
      QuadResult l = go(f, a, m, left, 0.5 * tol, depth - 1);
      QuadResult r = go(f, m, b, right, 0.5 * tol, depth - 1);
      return {l.value + r.value, l.error + r.error};
    }
  };
  double coarse = integrate_segment(f, a, b);
  QuadResult res = Rec::go(f, a, b, coarse, tol, max_depth);
  if (res.error > tol) throw QuadratureError(res);
  return res;
}

double SphericalTriangle::area() const {
  double la = std::atan2(norm(cross(b, c)), dot(b, c));
  double lb = std::atan2(norm(cross(a, c)), dot(a, c));
  double lc = std::atan2(norm(cross(a, b)), dot(a, b));
  double s = 0.5 * (la + lb + lc);
  double t = std::tan(0.5 * s) * std::tan(0.5 * (s - la)) * std::tan(0.5 * (s - lb)) *
             std::tan(0.5 * (s - lc));
  return 4.0 * std::atan(std::sqrt(std::max(0.0, t)));
}

namespace {

// Single-panel quadrature of f over the spherical triangle: Gauss points on
// the planar chord triangle mapped by central projection, with Jacobian
// |det(a,b,c)| / |p|^3.
double sph_tri_panel(const Vec3& a, const Vec3& b, const Vec3& c,
                     const std::function<double(const Vec3&)>& f, int order) {
  const std::vector<double>& xs = gauss_nodes(order);
  const std::vector<double>& ws = gauss_weights(order);
  double det = dot(a, cross(b, c));
  double sum = 0.0;
  // Duffy map of the unit square onto the triangle (s, t(1-s)).
  for (int i = 0; i < order; ++i) {
    double s = 0.5 * (xs[i] + 1.0);
    double wi = 0.5 * ws[i];
    for (int j = 0; j < order; ++j) {
      double t = 0.5 * (xs[j] + 1.0) * (1.0 - s);
      double wj = 0.5 * ws[j] * (1.0 - s);
      Vec3 p = a + s * (b - a) + t * (c - a);
      double pl = norm(p);
      Vec3 n = (1.0 / pl) * p;
      sum += wi * wj * f(n) * std::abs(det) / (pl * pl * pl);
    }
  }
  return sum;
}

void subdivide(const Vec3& a, const Vec3& b, const Vec3& c, int depth,
               const std::function<double(const Vec3&)>& f, int order, double& acc) {
  if (depth == 0) {
    acc += sph_tri_panel(a, b, c, f, order);
    return;
  }
  Vec3 ab = normalized(a + b), bc = normalized(b + c), ca = normalized(c + a);
  subdivide(a, ab, ca, depth - 1, f, order, acc);
  subdivide(ab, b, bc, depth - 1, f, order, acc);
  subdivide(ca, bc, c, depth - 1, f, order, acc);
  subdivide(ab, bc, ca, depth - 1, f, order, acc);
}

}  // namespace

double integrate_spherical_triangle(const SphericalTriangle& t,
                                    const std::function<double(const Vec3&)>& f,
                                    int depth, int order) {
  double acc = 0.0;
  subdivide(t.a, t.b, t.c, depth, f, order, acc);
  return acc;
}

QuadResult integrate_spherical_triangle_adaptive(
    const SphericalTriangle& t, const std::function<double(const Vec3&)>& f, double tol,
    int max_depth) {
  double prev = integrate_spherical_triangle(t, f, 0);
  for (int depth = 1; depth <= max_depth; ++depth) {
    double cur = integrate_spherical_triangle(t, f, depth);
    double err = std::abs(cur - prev);
    if (err <= tol) return {cur, err};
    prev = cur;
  }
  QuadResult best{prev, std::abs(prev) * 1e-6 + tol * 2};
  throw QuadratureError(best);
}

std::vector<Vec3> clip_spherical_polygon(const std::vector<Vec3>& poly, const Vec3& g) {
  std::vector<Vec3> out;
  std::size_t n = poly.size();
  if (n == 0) return out;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3& cur = poly[i];
    const Vec3& nxt = poly[(i + 1) % n];
    double dc = dot(cur, g), dn = dot(nxt, g);
    if (dc >= 0.0) out.push_back(cur);
    if ((dc > 0.0 && dn < 0.0) || (dc < 0.0 && dn > 0.0)) {
      // Crossing point on the great circle through cur,nxt: the chord
      // interpolant stays in span(cur,nxt), so normalizing lands on the arc.
      double t = dc / (dc - dn);
      out.push_back(normalized(cur + t * (nxt - cur)));
    }
  }
  return out;
}

std::vector<SphericalTriangle> fan_triangulate(const std::vector<Vec3>& poly) {
  std::vector<SphericalTriangle> tris;
  for (std::size_t i = 1; i + 1 < poly.size(); ++i)
    tris.push_back({poly[0], poly[i], poly[i + 1]});
  return tris;
}

}  // namespace voxelvol
