#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "voxelvol/geom.hpp"
#include "voxelvol/quadrature.hpp"

namespace voxelvol {

enum class PhantomKind { Ball, Capsule, OrthoBody };

// Exact r-regular test body: a convex core (point, segment, or orthotope
// spanned by orthonormal axes) dilated by a ball of radius r.
struct Phantom {
  int dim = 3;
  PhantomKind kind = PhantomKind::Ball;
  double r = 1.0;
  Vec3 base{0, 0, 0};           // ball center / orthotope corner
  std::vector<Vec3> axes;       // orthonormal edge directions, k of them
  std::vector<double> lengths;  // edge lengths t_i > 0

  static Phantom ball(int dim, const Vec3& center, double r);
  static Phantom capsule(int dim, const Vec3& p, const Vec3& u, double t, double r);
  static Phantom ortho_body(int dim, const Vec3& p, const std::vector<Vec3>& axes,
                            const std::vector<double>& lengths, double r);

  int core_rank() const { return static_cast<int>(axes.size()); }
};

// Squared distance from a point to the convex core.
double core_distance2(const Phantom& ph, const Vec3& q);

// Closed-set membership: dist(point, core) <= r.
bool contains(const Phantom& ph, const Vec3& point);

// Exact intrinsic volumes (V_0 .. V_d) via the Steiner formula for
// core (+) B(r).
std::vector<double> intrinsic_volumes(const Phantom& ph);

// Axis-aligned bounding box of the body.
struct BBox {
  Vec3 lo{0, 0, 0}, hi{0, 0, 0};
};
BBox bounding_box(const Phantom& ph);

// Intersection of the line {p0 + s*dir} with the body; the body is convex,
// so the result is one interval (or empty).
std::optional<std::pair<double, double>> line_body_interval(const Phantom& ph,
                                                            const Vec3& p0,
                                                            const Vec3& dir);

// Boundary decomposition into patches of constant curvature signature:
// spherical pieces (all curvatures 1/r), cylindrical bands (one zero
// curvature), and flats.
struct BoundaryPatch {
  enum class Kind { Sphere, Cylinder, Flat };
  Kind kind = Kind::Sphere;
  int dim = 3;
  double r = 1.0;

  // Sphere: x = center + r*n, n restricted by wedge halfspaces <n,g> >= 0.
  Vec3 center{0, 0, 0};
  std::vector<Vec3> wedge;

  // Cylinder (d=3): x = q0 + s*axis + r*n(theta), s in [0,length],
  // n(theta) = cos(theta) e + sin(theta) f; arcs empty means full circle.
  Vec3 axis{0, 0, 1};
  double length = 0.0;
  Vec3 frame_e{1, 0, 0}, frame_f{0, 1, 0};
  std::vector<std::pair<double, double>> arcs;

  // Flat: x over the face q0 + [0,ext1]*span1 (+ [0,ext2]*span2 in d=3),
  // offset by r*normal0 from the core face.
  Vec3 q0{0, 0, 0};
  Vec3 normal0{0, 0, 1};
  Vec3 span1{1, 0, 0}, span2{0, 1, 0};
  double ext1 = 0.0, ext2 = 0.0;

  double area() const;
};

std::vector<BoundaryPatch> boundary_patches(const Phantom& ph);

// Principal curvature data at a surface point of a given patch.
struct SurfacePoint {
  Vec3 x{0, 0, 0};
  Vec3 n{0, 0, 1};
  int num_curv = 0;                  // dim-1
  std::array<double, 2> k{0.0, 0.0};  // principal curvatures
  std::array<Vec3, 2> dir{};          // principal directions
};

// Second fundamental form of the projection of s onto the tangent plane.
inline double second_fundamental_form(const SurfacePoint& sp, const Vec3& s) {
  double v = 0.0;
  for (int i = 0; i < sp.num_curv; ++i) {
    double c = dot(s, sp.dir[i]);
    v += sp.k[i] * c * c;
  }
  return v;
}
inline double curvature_trace(const SurfacePoint& sp) {
  double v = 0.0;
  for (int i = 0; i < sp.num_curv; ++i) v += sp.k[i];
  return v;
}
// Q(s) = -II(s) + tr(II) <s,n>^2.
inline double q_form(const SurfacePoint& sp, const Vec3& s) {
  double c = dot(s, sp.n);
  return -second_fundamental_form(sp, s) + curvature_trace(sp) * c * c;
}

// Surface point constructors for each patch kind; used by the boundary
// integrators here and by the coefficient quadrature.
SurfacePoint sphere_point(const BoundaryPatch& p, const Vec3& n);
SurfacePoint cylinder_point(const BoundaryPatch& p, double s, double theta);
SurfacePoint flat_point(const BoundaryPatch& p, double alpha, double beta = 0.0);

// Intersects angle intervals with {theta : A cos + B sin >= 0}.
std::vector<std::pair<double, double>> intersect_halfplane_arcs(
    std::vector<std::pair<double, double>> arcs, double A, double B);

// Normal domain of a Sphere patch as cube-aligned strata: clipped spherical
// triangles (d=3) or angle intervals (d=2).
std::vector<SphericalTriangle> sphere_region_triangles(const BoundaryPatch& p);
std::vector<std::pair<double, double>> sphere_region_arcs(const BoundaryPatch& p);

// Cylinder patch arcs split at every cube selector breakpoint.
std::vector<std::pair<double, double>> cylinder_strata(const BoundaryPatch& p);

// Integrates f(point) over the whole boundary, adaptively, to absolute
// tolerance tol. Throws QuadratureError with the best estimate if the
// tolerance cannot be met.
QuadResult surface_integral(const Phantom& ph,
                            const std::function<double(const SurfacePoint&)>& f,
                            double tol = 1e-9);

// Circumradius of the core plus r (radius of a ball around `base` + ... );
// used for hit-or-miss preconditions.
double circumradius(const Phantom& ph);

}  // namespace voxelvol
