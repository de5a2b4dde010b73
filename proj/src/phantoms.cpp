#include "voxelvol/phantoms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "voxelvol/strata.hpp"

namespace voxelvol {

namespace {

void validate(const Phantom& ph) {
  if (ph.dim != 2 && ph.dim != 3) throw std::invalid_argument("phantom dimension must be 2 or 3");
  if (!(ph.r > 0.0)) throw std::invalid_argument("phantom radius must be positive");
  if (ph.axes.size() != ph.lengths.size())
    throw std::invalid_argument("axes/lengths size mismatch");
  if (static_cast<int>(ph.axes.size()) > ph.dim - 1)
    throw std::invalid_argument("core rank must be at most d-1");
  for (double t : ph.lengths)
    if (!(t > 0.0)) throw std::invalid_argument("edge lengths must be positive");
  for (std::size_t i = 0; i < ph.axes.size(); ++i) {
    if (std::abs(norm(ph.axes[i]) - 1.0) > 1e-12)
      throw std::invalid_argument("axes must be unit vectors");
    for (std::size_t j = i + 1; j < ph.axes.size(); ++j)
      if (std::abs(dot(ph.axes[i], ph.axes[j])) > 1e-12)
        throw std::invalid_argument("axes must be pairwise orthogonal");
    if (ph.dim == 2 && std::abs(ph.axes[i][2]) > 1e-12)
      throw std::invalid_argument("2d axis must lie in the plane");
  }
}

Vec3 core_centroid(const Phantom& ph) {
  Vec3 c = ph.base;
  for (std::size_t i = 0; i < ph.axes.size(); ++i) c = c + (0.5 * ph.lengths[i]) * ph.axes[i];
  return c;
}

double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double v = 1.0;
  for (int i = 0; i < k; ++i) v = v * (n - i) / (i + 1);
  return v;
}

}  // namespace

Phantom Phantom::ball(int dim, const Vec3& center, double r) {
  Phantom ph;
  ph.dim = dim;
  ph.kind = PhantomKind::Ball;
  ph.r = r;
  ph.base = center;
  validate(ph);
  return ph;
}

Phantom Phantom::capsule(int dim, const Vec3& p, const Vec3& u, double t, double r) {
  Phantom ph;
  ph.dim = dim;
  ph.kind = PhantomKind::Capsule;
  ph.r = r;
  ph.base = p;
  ph.axes = {u};
  ph.lengths = {t};
  validate(ph);
  return ph;
}

Phantom Phantom::ortho_body(int dim, const Vec3& p, const std::vector<Vec3>& axes,
                            const std::vector<double>& lengths, double r) {
  Phantom ph;
  ph.dim = dim;
  ph.kind = PhantomKind::OrthoBody;
  ph.r = r;
  ph.base = p;
  ph.axes = axes;
  ph.lengths = lengths;
  validate(ph);
  return ph;
}

double core_distance2(const Phantom& ph, const Vec3& q) {
  Vec3 rel = q - ph.base;
  double along2 = 0.0, excess2 = 0.0;
  for (std::size_t i = 0; i < ph.axes.size(); ++i) {
    double s = dot(rel, ph.axes[i]);
    along2 += s * s;
    double e = 0.0;
    if (s < 0.0) e = -s;
    else if (s > ph.lengths[i]) e = s - ph.lengths[i];
    excess2 += e * e;
  }
  double perp2 = norm2(rel) - along2;
  if (perp2 < 0.0) perp2 = 0.0;
  return perp2 + excess2;
}

bool contains(const Phantom& ph, const Vec3& point) {
  return core_distance2(ph, point) <= ph.r * ph.r;
}

std::vector<double> intrinsic_volumes(const Phantom& ph) {
  int d = ph.dim, k = ph.core_rank();
  // Elementary symmetric polynomials of the edge lengths = V_m of the core.
  std::vector<double> e(k + 1, 0.0);
  e[0] = 1.0;
  for (int i = 0; i < k; ++i)
    for (int m = std::min(i + 1, k); m >= 1; --m) e[m] += e[m - 1] * ph.lengths[i];

  std::vector<double> v(d + 1, 0.0);
  for (int j = 0; j <= d; ++j) {
    double sum = 0.0;
    for (int m = 0; m <= std::min(j, k); ++m)
      sum += binom(d - m, j - m) * unit_ball_volume(d - m) / unit_ball_volume(d - j) *
             std::pow(ph.r, j - m) * e[m];
    v[j] = sum;
  }
  return v;
}

BBox bounding_box(const Phantom& ph) {
  BBox box;
  box.lo = box.hi = ph.base;
  int k = ph.core_rank();
  for (int corner = 0; corner < (1 << k); ++corner) {
    Vec3 p = ph.base;
    for (int i = 0; i < k; ++i)
      if ((corner >> i) & 1) p = p + ph.lengths[i] * ph.axes[i];
    for (int c = 0; c < 3; ++c) {
      box.lo[c] = std::min(box.lo[c], p[c]);
      box.hi[c] = std::max(box.hi[c], p[c]);
    }
  }
  for (int c = 0; c < ph.dim; ++c) {
    box.lo[c] -= ph.r;
    box.hi[c] += ph.r;
  }
  return box;
}

double circumradius(const Phantom& ph) {
  double along2 = 0.0;
  for (double t : ph.lengths) along2 += 0.25 * t * t;
  return std::sqrt(along2) + ph.r;
}

std::optional<std::pair<double, double>> line_body_interval(const Phantom& ph,
                                                            const Vec3& p0,
                                                            const Vec3& dir) {
  double r2 = ph.r * ph.r;

  if (ph.kind == PhantomKind::Ball) {
    Vec3 rel = p0 - ph.base;
    double a = norm2(dir), b = 2.0 * dot(rel, dir), c = norm2(rel) - r2;
    double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) return std::nullopt;
    double sq = std::sqrt(disc);
    return std::make_pair((-b - sq) / (2.0 * a), (-b + sq) / (2.0 * a));
  }

  if (ph.kind == PhantomKind::Capsule) {
    // Roots of the three quadratic pieces of dist^2(segment) = r^2, kept if
    // the projection parameter lands in the matching piece.
    const Vec3 u = ph.axes[0];
    const double t = ph.lengths[0];
    Vec3 rel = p0 - ph.base;
    double pu = dot(rel, u), du = dot(dir, u);
    std::vector<double> roots;
    auto push_sphere_roots = [&](const Vec3& center, double lo, double hi) {
      Vec3 g = p0 - center;
      double a = norm2(dir), b = 2.0 * dot(g, dir), c = norm2(g) - r2;
      double disc = b * b - 4.0 * a * c;
      if (disc < 0.0) return;
      double sq = std::sqrt(disc);
      for (double s : {(-b - sq) / (2.0 * a), (-b + sq) / (2.0 * a)}) {
        double proj = pu + s * du;
        if (proj >= lo - 1e-12 && proj <= hi + 1e-12) roots.push_back(s);
      }
    };
    push_sphere_roots(ph.base, -1e300, 0.0);
    push_sphere_roots(ph.base + t * u, t, 1e300);
    {
      // Middle piece: |rel_perp + s dir_perp|^2 = r^2.
      Vec3 rp = rel - pu * u, dp = dir - du * u;
      double a = norm2(dp), b = 2.0 * dot(rp, dp), c = norm2(rp) - r2;
      if (a > 1e-30) {
        double disc = b * b - 4.0 * a * c;
        if (disc >= 0.0) {
          double sq = std::sqrt(disc);
          for (double s : {(-b - sq) / (2.0 * a), (-b + sq) / (2.0 * a)}) {
            double proj = pu + s * du;
            if (proj >= -1e-12 && proj <= t + 1e-12) roots.push_back(s);
          }
        }
      } else if (c <= 0.0 && std::abs(du) > 1e-30) {
        // Line parallel to the perp plane ... runs along the axis.
        roots.push_back((0.0 - pu) / du);
        roots.push_back((t - pu) / du);
      }
    }
    if (roots.empty()) return std::nullopt;
    auto [lo, hi] = std::minmax_element(roots.begin(), roots.end());
    if (*hi - *lo <= 0.0) return std::nullopt;
    return std::make_pair(*lo, *hi);
  }

  // Generic convex body: dist^2 along the line is convex; golden-section to
  // the minimum, then bisection to the two crossings.
  Vec3 cen = core_centroid(ph);
  double rc = circumradius(ph);
  Vec3 rel = p0 - cen;
  double a = norm2(dir), b = 2.0 * dot(rel, dir), c = norm2(rel) - rc * rc * 1.0001 - 1e-12;
  double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return std::nullopt;
  double sq = std::sqrt(disc);
  double lo = (-b - sq) / (2.0 * a), hi = (-b + sq) / (2.0 * a);

  auto g = [&](double s) { return core_distance2(ph, p0 + s * dir); };
  double x1 = lo, x2 = hi;
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double m1 = x2 - gr * (x2 - x1), m2 = x1 + gr * (x2 - x1);
  double g1 = g(m1), g2 = g(m2);
  for (int it = 0; it < 120 && (x2 - x1) > 1e-14 * (std::abs(x1) + std::abs(x2) + 1.0); ++it) {
    if (g1 <= g2) {
      x2 = m2; m2 = m1; g2 = g1;
      m1 = x2 - gr * (x2 - x1); g1 = g(m1);
    } else {
      x1 = m1; m1 = m2; g1 = g2;
      m2 = x1 + gr * (x2 - x1); g2 = g(m2);
    }
  }
  double smin = 0.5 * (x1 + x2);
  if (g(smin) > r2) return std::nullopt;
  auto bisect = [&](double inside, double outside) {
    for (int it = 0; it < 100; ++it) {
      double mid = 0.5 * (inside + outside);
      if (g(mid) <= r2) inside = mid;
      else outside = mid;
    }
    return inside;
  };
  return std::make_pair(bisect(smin, lo), bisect(smin, hi));
}

std::vector<std::pair<double, double>> intersect_halfplane_arcs(
    std::vector<std::pair<double, double>> arcs, double A, double B) {
  double phi = std::atan2(B, A);
  double lo = phi - 0.5 * kPi, hi = phi + 0.5 * kPi;
  // Normalize the keep-window into [0,2pi) pieces.
  std::vector<std::pair<double, double>> window;
  double lo_m = std::fmod(lo + 4.0 * kPi, 2.0 * kPi);
  double hi_m = lo_m + (hi - lo);
  if (hi_m <= 2.0 * kPi) {
    window.emplace_back(lo_m, hi_m);
  } else {
    window.emplace_back(lo_m, 2.0 * kPi);
    window.emplace_back(0.0, hi_m - 2.0 * kPi);
  }
  std::vector<std::pair<double, double>> out;
  for (const auto& arc : arcs)
    for (const auto& w : window) {
      double a = std::max(arc.first, w.first), b = std::min(arc.second, w.second);
      if (b - a > 1e-13) out.emplace_back(a, b);
    }
  return out;
}

double BoundaryPatch::area() const {
  if (kind == Kind::Flat) return dim == 2 ? ext1 : ext1 * ext2;
  if (kind == Kind::Cylinder) {
    double total = 0.0;
    if (arcs.empty()) total = 2.0 * kPi;
    else
      for (const auto& a : arcs) total += a.second - a.first;
    return r * length * total;
  }
  // Sphere with orthogonal wedge constraints: each halves the sphere.
  double full = dim == 2 ? 2.0 * kPi * r : 4.0 * kPi * r * r;
  return full / static_cast<double>(1u << wedge.size());
}

std::vector<BoundaryPatch> boundary_patches(const Phantom& ph) {
  std::vector<BoundaryPatch> out;
  int d = ph.dim, k = ph.core_rank();

  for (int fset = 0; fset < (1 << k); ++fset) {
    int flat_dims = 0;
    for (int i = 0; i < k; ++i)
      if ((fset >> i) & 1) ++flat_dims;
    int normal_dim = d - 1 - flat_dims;  // dimension of the normal subsphere

    // Corner choices for the non-spanning axes.
    std::vector<int> fixed;
    for (int i = 0; i < k; ++i)
      if (!((fset >> i) & 1)) fixed.push_back(i);

    int ncorners = 1 << fixed.size();
    for (int eps = 0; eps < ncorners; ++eps) {
      Vec3 q0 = ph.base;
      std::vector<Vec3> outward;
      for (std::size_t m = 0; m < fixed.size(); ++m) {
        int i = fixed[m];
        bool far = (eps >> m) & 1;
        if (far) q0 = q0 + ph.lengths[i] * ph.axes[i];
        outward.push_back(far ? ph.axes[i] : -ph.axes[i]);
      }

      if (normal_dim == 0) {
        // One flat face per unit normal of span(axes)^perp.
        Vec3 n0;
        if (d == 2) n0 = normalized(cross(ph.axes[0], Vec3{0, 0, 1}));
        else n0 = normalized(cross(ph.axes[0], ph.axes[1]));
        for (Vec3 nn : {n0, -n0}) {
          BoundaryPatch p;
          p.kind = BoundaryPatch::Kind::Flat;
          p.dim = d;
          p.r = ph.r;
          p.q0 = q0 + ph.r * nn;
          p.normal0 = nn;
          p.span1 = ph.axes[0];
          p.ext1 = ph.lengths[0];
          if (d == 3) {
            p.span2 = ph.axes[1];
            p.ext2 = ph.lengths[1];
          }
          out.push_back(p);
        }
      } else if (flat_dims == 0) {
        BoundaryPatch p;
        p.kind = BoundaryPatch::Kind::Sphere;
        p.dim = d;
        p.r = ph.r;
        p.center = q0;
        p.wedge = outward;
        out.push_back(p);
      } else {
        // d=3 with one spanning axis: cylindrical band.
        int i = 0;
        while (!((fset >> i) & 1)) ++i;
        BoundaryPatch p;
        p.kind = BoundaryPatch::Kind::Cylinder;
        p.dim = d;
        p.r = ph.r;
        p.q0 = q0;
        p.axis = ph.axes[i];
        p.length = ph.lengths[i];
        orthonormal_complement(p.axis, 3, p.frame_e, p.frame_f);
        std::vector<std::pair<double, double>> arcs;  // empty = full
        if (!outward.empty()) {
          arcs = {{0.0, 2.0 * kPi}};
          for (const Vec3& g : outward)
            arcs = intersect_halfplane_arcs(arcs, dot(p.frame_e, g), dot(p.frame_f, g));
        }
        p.arcs = arcs;
        out.push_back(p);
      }
    }
  }
  return out;
}

SurfacePoint sphere_point(const BoundaryPatch& p, const Vec3& n) {
  SurfacePoint sp;
  sp.x = p.center + p.r * n;
  sp.n = n;
  sp.num_curv = p.dim - 1;
  if (p.dim == 2) {
    sp.dir[0] = {-n[1], n[0], 0.0};
    sp.k[0] = 1.0 / p.r;
  } else {
    Vec3 e, f;
    orthonormal_complement(n, 3, e, f);
    sp.dir[0] = e;
    sp.dir[1] = f;
    sp.k[0] = sp.k[1] = 1.0 / p.r;
  }
  return sp;
}

SurfacePoint cylinder_point(const BoundaryPatch& p, double s, double theta) {
  SurfacePoint sp;
  Vec3 n = std::cos(theta) * p.frame_e + std::sin(theta) * p.frame_f;
  sp.x = p.q0 + s * p.axis + p.r * n;
  sp.n = n;
  sp.num_curv = 2;
  sp.dir[0] = p.axis;
  sp.k[0] = 0.0;
  sp.dir[1] = cross(p.axis, n);
  sp.k[1] = 1.0 / p.r;
  return sp;
}

SurfacePoint flat_point(const BoundaryPatch& p, double alpha, double beta) {
  SurfacePoint sp;
  sp.x = p.q0 + alpha * p.span1;
  if (p.dim == 3) sp.x = sp.x + beta * p.span2;
  sp.n = p.normal0;
  sp.num_curv = p.dim - 1;
  sp.dir[0] = p.span1;
  sp.k[0] = 0.0;
  if (p.dim == 3) {
    sp.dir[1] = p.span2;
    sp.k[1] = 0.0;
  }
  return sp;
}

std::vector<SphericalTriangle> sphere_region_triangles(const BoundaryPatch& p) {
  std::vector<SphericalTriangle> out;
  for (const auto& base : cube_sphere_triangles()) {
    std::vector<Vec3> poly = {base.tri.a, base.tri.b, base.tri.c};
    for (const Vec3& g : p.wedge) poly = clip_spherical_polygon(poly, g);
    for (const auto& tri : fan_triangulate(poly))
      if (tri.area() > 1e-14) out.push_back(tri);
  }
  return out;
}

std::vector<std::pair<double, double>> sphere_region_arcs(const BoundaryPatch& p) {
  std::vector<std::pair<double, double>> arcs(cube_circle_arcs());
  for (const Vec3& g : p.wedge) arcs = intersect_halfplane_arcs(arcs, g[0], g[1]);
  return arcs;
}

std::vector<std::pair<double, double>> cylinder_strata(const BoundaryPatch& p) {
  std::vector<std::pair<double, double>> arcs =
      p.arcs.empty() ? std::vector<std::pair<double, double>>{{0.0, 2.0 * kPi}} : p.arcs;
  std::vector<double> brk = circle_breakpoints(p.frame_e, p.frame_f, 3);
  std::vector<std::pair<double, double>> strata;
  for (const auto& arc : arcs) {
    double prev = arc.first;
    for (double b : brk)
      if (b > arc.first + 1e-13 && b < arc.second - 1e-13) {
        strata.emplace_back(prev, b);
        prev = b;
      }
    strata.emplace_back(prev, arc.second);
  }
  return strata;
}

QuadResult surface_integral(const Phantom& ph,
                            const std::function<double(const SurfacePoint&)>& f,
                            double tol) {
  std::vector<BoundaryPatch> patches = boundary_patches(ph);
  double total_area = 0.0;
  for (const auto& p : patches) total_area += p.area();

  QuadResult res;
  bool tol_missed = false;
  for (const auto& p : patches) {
    double ptol = std::max(tol * (p.area() / total_area), tol * 1e-3);
    try {
      if (p.kind == BoundaryPatch::Kind::Sphere) {
        if (p.dim == 3) {
          for (const auto& tri : sphere_region_triangles(p)) {
            double share = std::max(tri.area() / (4.0 * kPi), 1e-6);
            QuadResult q = integrate_spherical_triangle_adaptive(
                tri, [&](const Vec3& n) { return f(sphere_point(p, n)) * p.r * p.r; },
                ptol * share);
            res += q;
          }
        } else {
          std::vector<std::pair<double, double>> arcs = sphere_region_arcs(p);
          for (const auto& arc : arcs) {
            QuadResult q = integrate_segment_adaptive(
                [&](double th) {
                  Vec3 n{std::cos(th), std::sin(th), 0.0};
                  return f(sphere_point(p, n)) * p.r;
                },
                arc.first, arc.second, ptol / arcs.size());
            res += q;
          }
        }
      } else if (p.kind == BoundaryPatch::Kind::Cylinder) {
        std::vector<std::pair<double, double>> strata = cylinder_strata(p);
        for (const auto& st : strata) {
          QuadResult q = integrate_segment_adaptive(
              [&](double th) {
                return integrate_segment(
                    [&](double s) { return f(cylinder_point(p, s, th)) * p.r; }, 0.0,
                    p.length, 24);
              },
              st.first, st.second, ptol / strata.size());
          res += q;
        }
      } else {
        if (p.dim == 2) {
          res += integrate_segment_adaptive(
              [&](double a) { return f(flat_point(p, a, 0.0)); }, 0.0, p.ext1, ptol);
        } else {
          res += integrate_segment_adaptive(
              [&](double a) {
                return integrate_segment(
                    [&](double b) { return f(flat_point(p, a, b)); }, 0.0, p.ext2, 24);
              },
              0.0, p.ext1, ptol);
        }
      }
    } catch (const QuadratureError& e) {
      res += e.best;
      tol_missed = true;
    }
  }
  if (tol_missed && res.error > tol) throw QuadratureError(res);
  return res;
}

}  // namespace voxelvol
