#include "voxelvol/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace voxelvol {

void WeightVector::validate(const ClassPartition& part) const {
  if (dim != part.dim) throw std::invalid_argument("weights/partition dimension mismatch");
  if (w.size() != part.classes.size())
    throw std::invalid_argument("weight vector has wrong class count");
  if (target_index < 0 || target_index > dim)
    throw std::invalid_argument("target index must be in 0..d");
  int empty_id = part.class_of(0);
  if (w[empty_id] != 0.0)
    throw std::invalid_argument("weight on the empty class must be zero");
  if (target_index < dim) {
    int full_id = part.class_of(num_configurations(dim) - 1);
    if (w[full_id] != 0.0)
      throw std::invalid_argument("weight on the full class must be zero for i < d");
  }
}

std::vector<double> WeightVector::expand(const ClassPartition& part) const {
  std::vector<double> out(num_configurations(part.dim), 0.0);
  for (std::size_t l = 0; l < out.size(); ++l)
    out[l] = w[part.class_of(static_cast<std::uint32_t>(l))];
  return out;
}

namespace {

template <typename Count>
double evaluate_impl(const WeightVector& weights, const std::vector<Count>& counts,
                     double a) {
  if (counts.size() != weights.w.size())
    throw std::invalid_argument("class count / weight dimension mismatch");
  if (!(a > 0.0)) throw std::invalid_argument("lattice spacing must be positive");
  double s = 0.0;
  for (std::size_t j = 0; j < counts.size(); ++j)
    s += weights.w[j] * static_cast<double>(counts[j]);
  return std::pow(a, weights.target_index) * s;
}

}  // namespace

double evaluate(const WeightVector& weights, const std::vector<std::int64_t>& counts,
                double a) {
  return evaluate_impl(weights, counts, a);
}
double evaluate(const WeightVector& weights, const std::vector<double>& counts, double a) {
  return evaluate_impl(weights, counts, a);
}

WeightVector euler_2d_weights(const ClassPartition& part) {
  if (part.dim != 2) throw std::invalid_argument("euler weights are 2d");
  WeightVector wv;
  wv.target_index = 0;
  wv.dim = 2;
  wv.w.assign(part.classes.size(), 0.0);
  wv.w[part.id_of_label("eta1")] = 0.25;
  wv.w[part.id_of_label("eta3")] = -0.25;
  return wv;
}

WeightVector isotropic_3d_unbiased_weights(const ClassPartition& part) {
  if (part.dim != 3) throw std::invalid_argument("canonical isotropic weights are 3d");
  WeightVector wv;
  wv.target_index = 1;
  wv.dim = 3;
  wv.w.assign(part.classes.size(), 0.0);
  double mu1 = 3.0 - std::sqrt(3.0);
  wv.w[part.id_of_label("eta1")] = 1.0 / (2.0 * mu1);
  wv.w[part.id_of_label("eta7")] = -1.0 / (2.0 * mu1);
  return wv;
}

AsymptoticMean asymptotic_mean(const WeightVector& weights, const CoefficientTable& table,
                               LatticeModel model, const Phantom& phantom,
                               double zero_tol) {
  if (table.dim != weights.dim)
    throw std::invalid_argument("table/weights dimension mismatch");
  if (weights.w.size() != table.entries.size())
    throw std::invalid_argument("table/weights class count mismatch");

  std::vector<double> vols = intrinsic_volumes(phantom);
  AsymptoticMean out;
  double first = 0.0;
  for (std::size_t j = 0; j < weights.w.size(); ++j) {
    if (weights.w[j] == 0.0) continue;
    if (model == LatticeModel::StationaryIsotropic) {
      first += weights.w[j] * table.entries[j].psi_bar;
    } else {
      if (!table.entries[j].phi_bar)
        throw std::invalid_argument("table lacks phi_bar entries (needs a phantom)");
      first += weights.w[j] * *table.entries[j].phi_bar;
    }
  }
  if (model == LatticeModel::StationaryIsotropic) first *= vols[weights.dim - 1];
  out.first_order = first;
  if (std::abs(first) > zero_tol) {
    out.divergent = true;
    return out;
  }
  double zeroth = 0.0;
  for (std::size_t j = 0; j < weights.w.size(); ++j) {
    if (weights.w[j] == 0.0) continue;
    if (model == LatticeModel::StationaryIsotropic) {
      zeroth += weights.w[j] * table.entries[j].mu_bar;
    } else {
      if (!table.entries[j].lambda_bar)
        throw std::invalid_argument("table lacks lambda_bar entries (needs a phantom)");
      zeroth += weights.w[j] * *table.entries[j].lambda_bar;
    }
  }
  if (model == LatticeModel::StationaryIsotropic) zeroth *= vols[weights.dim - 2];
  out.zeroth_order = zeroth;
  return out;
}

void LinearSystem::add(const std::vector<double>& row, double b, const std::string& label) {
  if (!rows.empty() && row.size() != rows.front().size())
    throw std::invalid_argument("inconsistent row length");
  rows.push_back(row);
  rhs.push_back(b);
  labels.push_back(label);
}

LinearSystem build_nonexistence_system_3d() {
  double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0);
  LinearSystem sys;
  sys.add({0.0, 2.0, 0.0}, 1.0, "h1=t1");
  sys.add({s2, 0.0, s2}, 1.0, "h2=t2");
  sys.add({s3, s3, -s3}, 1.0, "h3=t3");
  sys.add({3.0 - s3, 3.0 * s3 - 3.0 * s2, -3.0 + 6.0 * s2 - 3.0 * s3}, 1.0, "wer");
  return sys;
}

LinearSystem build_euler_system_2d() {
  LinearSystem sys;
  sys.add({0.0, 1.0, 0.0}, 0.0, "psi-vanish-w2");
  sys.add({1.0, 0.0, 1.0}, 0.0, "psi-vanish-sum");
  sys.add({2.0, 0.0, -2.0}, 1.0, "mu-normalize");
  return sys;
}

std::vector<double> capsule_class_coefficients(const Vec3& u, const ClassPartition& part) {
  if (part.dim != 3) throw std::invalid_argument("capsule constraint is 3d");
  if (std::abs(norm(u) - 1.0) > 1e-12) throw std::invalid_argument("u must be unit");
  Vec3 e, f;
  orthonormal_complement(u, 3, e, f);
  std::vector<double> brk = circle_breakpoints(e, f, 3);

  std::vector<double> coeff(part.classes.size(), 0.0);
  std::uint32_t nm = num_configurations(3);
  for (std::uint32_t l = 1; l + 1 < nm; ++l) {
    ConfigSets cs = config_sets(l, 3);
    double acc = 0.0;
    for (std::size_t s = 0; s + 1 < brk.size(); ++s) {
      double t0 = brk[s], t1 = brk[s + 1];
      double mid = 0.5 * (t0 + t1);
      Vec3 nm_mid = std::cos(mid) * e + std::sin(mid) * f;
      double hb = -1e300, lw = 1e300;
      Vec3 bp{0, 0, 0}, wm{0, 0, 0};
      for (const Vec3& b : cs.black)
        if (double v = dot(b, nm_mid); v > hb) { hb = v; bp = b; }
      for (const Vec3& w : cs.white)
        if (double v = dot(w, nm_mid); v < lw) { lw = v; wm = w; }
      if (!(hb < lw)) continue;
      acc += integrate_segment(
          [&](double th) {
            Vec3 n = std::cos(th) * e + std::sin(th) * f;
            Vec3 un = cross(u, n);
            double b1 = dot(bp, n), b2 = dot(bp, un);
            double w1 = dot(wm, n), w2 = dot(wm, un);
            return (b1 * b1 - b2 * b2) - (w1 * w1 - w2 * w2);
          },
          t0, t1, 24);
    }
    coeff[part.class_of(l)] += 0.5 * acc;
  }
  return coeff;
}

double capsule_constraint(const Vec3& u, const WeightVector& weights,
                          const ClassPartition& part) {
  std::vector<double> c = capsule_class_coefficients(u, part);
  double s = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) s += weights.w[j] * c[j];
  return s;
}

Feasibility check_feasibility(const LinearSystem& sys, double tol) {
  Feasibility out;
  if (sys.rows.empty()) {
    out.feasible = true;
    out.rank = 0;
    out.residual = 0.0;
    return out;
  }
  std::size_t m = sys.rows.size(), n = sys.rows.front().size();

  // Householder QR with column pivoting on the m x n matrix.
  std::vector<std::vector<double>> A = sys.rows;
  std::vector<double> b = sys.rhs;
  std::vector<std::size_t> perm(n);
  for (std::size_t j = 0; j < n; ++j) perm[j] = j;

  double max_row_norm = 0.0;
  for (const auto& row : A) {
    double s = 0.0;
    for (double v : row) s += v * v;
    max_row_norm = std::max(max_row_norm, std::sqrt(s));
  }
  if (tol < 0.0) tol = 100.0 * 2.220446049250313e-16 * std::max(1.0, max_row_norm);
  out.tolerance = tol;

  std::size_t kmax = std::min(m, n);
  std::size_t rank = 0;
  for (std::size_t k = 0; k < kmax; ++k) {
    // Pivot: column with the largest remaining norm.
    std::size_t best = k;
    double best_norm = -1.0;
    for (std::size_t j = k; j < n; ++j) {
      double s = 0.0;
      for (std::size_t i = k; i < m; ++i) s += A[i][j] * A[i][j];
      if (s > best_norm) { best_norm = s; best = j; }
    }
    if (best != k) {
      for (std::size_t i = 0; i < m; ++i) std::swap(A[i][k], A[i][best]);
      std::swap(perm[k], perm[best]);
    }
    double colnorm = std::sqrt(std::max(best_norm, 0.0));
    if (colnorm <= tol) break;
    ++rank;
    // Householder vector for column k.
    double alpha = A[k][k] >= 0 ? -colnorm : colnorm;
    std::vector<double> v(m, 0.0);
    v[k] = A[k][k] - alpha;
    for (std::size_t i = k + 1; i < m; ++i) v[i] = A[i][k];
    double vnorm2 = 0.0;
    for (std::size_t i = k; i < m; ++i) vnorm2 += v[i] * v[i];
    if (vnorm2 < 1e-300) continue;
    for (std::size_t j = k; j < n; ++j) {
      double s = 0.0;
      for (std::size_t i = k; i < m; ++i) s += v[i] * A[i][j];
      s *= 2.0 / vnorm2;
      for (std::size_t i = k; i < m; ++i) A[i][j] -= s * v[i];
    }
    double s = 0.0;
    for (std::size_t i = k; i < m; ++i) s += v[i] * b[i];
    s *= 2.0 / vnorm2;
    for (std::size_t i = k; i < m; ++i) b[i] -= s * v[i];
  }

  // Basic least-squares solution: free (unpivoted) variables at zero.
  std::vector<double> y(n, 0.0);
  for (std::size_t k = rank; k-- > 0;) {
    double s = b[k];
    for (std::size_t j = k + 1; j < rank; ++j) s -= A[k][j] * y[j];
    y[k] = s / A[k][k];
  }
  out.solution.assign(n, 0.0);
  for (std::size_t j = 0; j < rank; ++j) out.solution[perm[j]] = y[j];
  double res2 = 0.0;
  for (std::size_t i = rank; i < m; ++i) res2 += b[i] * b[i];
  out.residual = std::sqrt(res2);
  out.rank = static_cast<int>(rank);
  out.feasible = out.residual <= tol;
  return out;
}

}  // namespace voxelvol
