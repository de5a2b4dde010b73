#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "voxelvol/geom.hpp"

namespace voxelvol {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error

  QuadResult& operator+=(const QuadResult& o) {
    value += o.value;
    error += o.error;
    return *this;
  }
};

// Raised when an integral cannot meet the requested tolerance in budget;
// carries the best estimate and its error bound.
struct QuadratureError : std::runtime_error {
  QuadResult best;
  explicit QuadratureError(const QuadResult& r)
      : std::runtime_error("quadrature tolerance not reached"), best(r) {}
};

// Gauss-Legendre nodes/weights on [-1,1], computed once per order.
const std::vector<double>& gauss_nodes(int order);
const std::vector<double>& gauss_weights(int order);

// Integrate f over [a,b] with a fixed-order Gauss rule.
double integrate_segment(const std::function<double(double)>& f, double a, double b,
                         int order = 24);

// Adaptive version: bisects until the nested-rule difference is below tol.
QuadResult integrate_segment_adaptive(const std::function<double(double)>& f, double a,
                                      double b, double tol, int max_depth = 24);

// Geodesic triangle on the unit sphere.
struct SphericalTriangle {
  Vec3 a, b, c;
  double area() const;  // solid angle via l'Huilier
};

// Integrate f(n) against surface measure over a spherical triangle. The
// triangle is mapped from its planar chord triangle by central projection;
// `depth` levels of 4-way midpoint subdivision are applied first.
double integrate_spherical_triangle(const SphericalTriangle& t,
                                    const std::function<double(const Vec3&)>& f,
                                    int depth = 2, int order = 8);

// Adaptive wrapper comparing successive depths.
QuadResult integrate_spherical_triangle_adaptive(
    const SphericalTriangle& t, const std::function<double(const Vec3&)>& f, double tol,
    int max_depth = 7);

// Convex spherical polygon clipping against the halfspace {n : <n,g> >= 0}.
// Vertices are unit vectors joined by minor great-circle arcs.
std::vector<Vec3> clip_spherical_polygon(const std::vector<Vec3>& poly, const Vec3& g);

// Fan triangulation of a convex spherical polygon.
std::vector<SphericalTriangle> fan_triangulate(const std::vector<Vec3>& poly);

}  // namespace voxelvol
