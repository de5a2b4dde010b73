#pragma once

#include <vector>

#include "voxelvol/quadrature.hpp"

namespace voxelvol {

// The hyperplanes <x_i - x_j, n> = 0 over unit-cell vertex pairs cut the
// sphere into pieces on which every support-set selector is constant.
//
// d=3: 96 spherical triangles, two per signed axis triple (alpha,beta,gamma).
// Type 1 holds n_alpha >= n_beta + n_gamma, type 2 the reverse, inside the
// chamber n_alpha >= n_beta >= n_gamma >= 0 (n_* taken against the signed
// axes).
struct CubeSphereTriangle {
  SphericalTriangle tri;
  int type = 1;  // 1 or 2
};

const std::vector<CubeSphereTriangle>& cube_sphere_triangles();

// d=2: the 8 arcs cut at angles k*pi/4.
const std::vector<std::pair<double, double>>& cube_circle_arcs();

// All nonzero pairwise difference vectors of {0,1}^dim cell vertices.
const std::vector<Vec3>& cube_vertex_differences(int dim);

// Angles in [0, 2*pi) where some difference vector is orthogonal to
// n(theta) = cos(theta) e + sin(theta) f; sorted and deduplicated. Used to
// stratify integrals over an arbitrary great circle.
std::vector<double> circle_breakpoints(const Vec3& e, const Vec3& f, int dim);

}  // namespace voxelvol
