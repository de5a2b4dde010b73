#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "voxelvol/configs.hpp"
#include "voxelvol/phantoms.hpp"
#include "voxelvol/strata.hpp"

namespace voxelvol {

// ---- support-function machinery over finite point sets ----

// h(S,n) = max_{s in S} <s,n>.
double support_h(const std::vector<Vec3>& S, const Vec3& n);

// Strict separation indicator: h(B (+) W_check, n) < 0, i.e.
// max_b <b,n> < min_w <w,n>.
bool delta_indicator(const std::vector<Vec3>& B, const std::vector<Vec3>& W, const Vec3& n);

// (-h(B (+) W_check, n))^+ = (min_w <w,n> - max_b <b,n>)^+.
double first_order_density(const std::vector<Vec3>& B, const std::vector<Vec3>& W,
                           const Vec3& n);

// Unique support points p_S^+/- outside the degenerate direction set D(S);
// flagged (and zeroed) on ties.
struct SupportPoint {
  Vec3 p{0, 0, 0};
  int index = -1;
  bool degenerate = false;
};
SupportPoint support_point_plus(const std::vector<Vec3>& S, const Vec3& n,
                                double tie_eps = 1e-12);
SupportPoint support_point_minus(const std::vector<Vec3>& S, const Vec3& n,
                                 double tie_eps = 1e-12);

// Black/white vertex sets of a configuration.
struct ConfigSets {
  std::vector<Vec3> black, white;
};
ConfigSets config_sets(std::uint32_t mask, int dim);

// The 96 spherical triangles cut by the cell-vertex difference planes.
inline const std::vector<CubeSphereTriangle>& triangle_decomposition() {
  return cube_sphere_triangles();
}

// ---- asymptotic coefficients ----
// All S^{d-1} integrals use the uniform probability measure; this
// normalization reproduces the closed-form coefficient values.

// psi_bar_j = 2 sum_{l in class} E_n[ (-h(B_l (+) W_l_check, n))^+ ].
double psi_bar(const ClassPartition& part, int class_id, double tol = 1e-8);

// mu_bar_j by the reduced class formula
//   (d pi/(d-1)) sum_{l in class} E_n[(h(B_l,n)^2 - h(W_l_check,n)^2) delta].
double mu_bar(const ClassPartition& part, int class_id, double tol = 1e-8);

// mu_l by the raw per-configuration formula (with the |p^+|^2-|p^-|^2 term).
double mu_l(std::uint32_t mask, int dim, double tol = 1e-8);

// phi_bar_j(X) = sum_{l in class} int_{boundary} (-h)^+ dH^{d-1}.
double phi_bar(const Phantom& ph, const ClassPartition& part, int class_id,
               double tol = 1e-8);

// lambda_l(X): (1/2) int (Q^+(B)-Q^-(W)) delta dH^{d-1} minus the {h=0}
// correction, the latter evaluated analytically per patch kind.
double lambda_l(const Phantom& ph, std::uint32_t mask, double tol = 1e-9);

double lambda_bar(const Phantom& ph, const ClassPartition& part, int class_id,
                  double tol = 1e-9);

// Closed forms (d=3 named classes; zero for non-separable classes).
std::optional<double> closed_form_psi_bar(const ClassPartition& part, int class_id);
std::optional<double> closed_form_mu_bar(const ClassPartition& part, int class_id);
double zeta_constant();  // 3 sqrt(2) atan(sqrt 2) / (2 pi)

struct CoefficientEntry {
  int class_id = 0;
  std::optional<double> phi_bar, lambda_bar;  // phantom-dependent
  double psi_bar = 0.0, mu_bar = 0.0;
  std::string provenance;  // "closed-form" or "quadrature"
  double err = 0.0;
};

struct CoefficientTable {
  int dim = 0;
  std::vector<CoefficientEntry> entries;                 // one per class
  std::vector<double> mu_per_config;                     // optional, 2^(2^d)
  std::vector<std::optional<double>> lambda_per_config;  // optional

  const CoefficientEntry& by_class(int id) const { return entries.at(id); }
};

// Quadrature table for all classes; closed forms are recorded alongside in
// `provenance` when they pin the entry. Pass a phantom to fill phi/lambda.
CoefficientTable compute_coefficient_table(const ClassPartition& part,
                                           const Phantom* phantom = nullptr,
                                           double tol = 1e-8,
                                           bool per_config = false);

// ---- hit-or-miss transform volume ----

enum class HitMissMethod { Grid, MonteCarlo };

struct HitMissResult {
  double value = 0.0;
  double error_bound = 0.0;
  std::int64_t work = 0;  // columns or samples actually used
};

// Lebesgue measure of {z : z + aB subset X, z + aW subset X^c}. The grid
// method integrates exact per-column 1D section measures over a midpoint
// grid of columns; Monte Carlo samples the bounding window. `budget` caps
// the number of columns / samples.
HitMissResult hit_or_miss_volume(const Phantom& ph, const std::vector<Vec3>& B,
                                 const std::vector<Vec3>& W, double a,
                                 HitMissMethod method = HitMissMethod::Grid,
                                 std::int64_t budget = 40'000'000,
                                 std::uint64_t seed = 12345);

}  // namespace voxelvol
