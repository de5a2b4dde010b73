#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "voxelvol/asymptotics.hpp"
#include "voxelvol/configs.hpp"
#include "voxelvol/phantoms.hpp"

namespace voxelvol {

// Per-class weights of a local estimator for V_i; the full weight applied
// to the class count is a^i * w_j. The empty-configuration class always has
// weight zero, and so does the full class when i < d.
struct WeightVector {
  int target_index = 0;  // i, the estimated functional V_i
  int dim = 0;
  std::vector<double> w;  // one entry per class id

  void validate(const ClassPartition& part) const;
  // Per-configuration expansion w_l = w_{class(l)}.
  std::vector<double> expand(const ClassPartition& part) const;
};

// a^i * sum_j w_j * Nbar_j.
double evaluate(const WeightVector& weights, const std::vector<std::int64_t>& class_counts,
                double a);
double evaluate(const WeightVector& weights, const std::vector<double>& class_counts,
                double a);

// The unique asymptotically unbiased Euler estimator in 2D:
// w(eta1)=1/4, w(eta2)=0, w(eta3)=-1/4.
WeightVector euler_2d_weights(const ClassPartition& part);

// Canonical 3D isotropic estimator for V_1: w(eta1) = -w(eta7) = 1/(2 mu_bar_1).
WeightVector isotropic_3d_unbiased_weights(const ClassPartition& part);

struct AsymptoticMean {
  double first_order = 0.0;     // lim a E Vhat
  bool divergent = false;       // first order nonzero => no zeroth-order limit
  double zeroth_order = 0.0;    // lim E Vhat when it exists
};

enum class LatticeModel { StationaryNonIsotropic, StationaryIsotropic };

// Asymptotic mean from a coefficient table. The isotropic model uses
// psi/mu scaled by V_{d-1}(X) and V_{d-2}(X); the non-isotropic model uses
// phi/lambda, which must be present in the table.
AsymptoticMean asymptotic_mean(const WeightVector& weights, const CoefficientTable& table,
                               LatticeModel model, const Phantom& phantom,
                               double zero_tol = 1e-9);

struct LinearSystem {
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  std::vector<std::string> labels;

  void add(const std::vector<double>& row, double b, const std::string& label);
};

// The four constraints on (A,B,C) = (w1-w7, w2-w6, w3-w5) that an
// asymptotically unbiased 3D estimator would have to satisfy: the three
// capsule equations h_i = t_i and the ball equation.
LinearSystem build_nonexistence_system_3d();

// The 2D Euler system {w2 = 0, w1 + w3 = 0, 2(w1 - w3) = 1}.
LinearSystem build_euler_system_2d();

// Per-unit-length second-order coefficient of a capsule along u, by circle
// quadrature over the selector-constant arcs; returns sum_j w_j c_j(u).
double capsule_constraint(const Vec3& u, const WeightVector& weights,
                          const ClassPartition& part);
// The per-class coefficients c_j(u) themselves.
std::vector<double> capsule_class_coefficients(const Vec3& u, const ClassPartition& part);

struct Feasibility {
  bool feasible = false;
  std::vector<double> solution;  // least-squares solution
  double residual = 0.0;         // ||Ax - b||_2
  int rank = 0;
  double tolerance = 0.0;
};

// Rank decision via column-pivoted QR; residual of the least-squares
// solution decides feasibility.
Feasibility check_feasibility(const LinearSystem& sys, double tol = -1.0);

}  // namespace voxelvol
