#include "voxelvol/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "voxelvol/parallel.hpp"

namespace voxelvol {

namespace {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

StreamRng::StreamRng(std::uint64_t seed, std::uint64_t s1, std::uint64_t s2) {
  state = mix64(mix64(mix64(seed) ^ (s1 * 0xA24BAED4963EE407ull)) ^
                (s2 * 0x9FB21C651E98DF25ull));
}

std::uint64_t StreamRng::next_u64() {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double StreamRng::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

LatticePose sample_pose(SamplingMode mode, int dim, double a, std::uint64_t seed,
                        int a_index, int replicate) {
  StreamRng rng(seed, static_cast<std::uint64_t>(a_index) + 1,
                static_cast<std::uint64_t>(replicate) + 1);
  LatticePose pose;
  pose.dim = dim;
  pose.a = a;
  for (int k = 0; k < dim; ++k) pose.c[k] = rng.next_unit();
  if (mode == SamplingMode::Isotropic) {
    if (dim == 2) {
      pose.R = rotation2d(2.0 * kPi * rng.next_unit());
    } else {
      // Uniform unit quaternion (Shoemake).
      double u1 = rng.next_unit(), u2 = rng.next_unit(), u3 = rng.next_unit();
      double q0 = std::sqrt(1.0 - u1) * std::sin(2.0 * kPi * u2);
      double q1 = std::sqrt(1.0 - u1) * std::cos(2.0 * kPi * u2);
      double q2 = std::sqrt(u1) * std::sin(2.0 * kPi * u3);
      double q3 = std::sqrt(u1) * std::cos(2.0 * kPi * u3);
      pose.R = rotation_from_quaternion(q0, q1, q2, q3);
    }
  }
  return pose;
}

void DesignSpec::validate() const {
  if (spacings.empty()) throw std::invalid_argument("design needs at least one spacing");
  if (replicates < 2) throw std::invalid_argument("design needs at least two replicates");
  double amax = *std::max_element(spacings.begin(), spacings.end());
  if (amax * std::sqrt(static_cast<double>(phantom.dim)) >= phantom.r)
    throw std::invalid_argument("largest spacing breaks the digitization regime");
  if (margin_factor < 1.0) throw std::invalid_argument("margin factor must be >= 1");
  for (double a : spacings)
    if (!(a > 0.0)) throw std::invalid_argument("spacings must be positive");
}

ExperimentResult run(const DesignSpec& design, const ClassPartition& part, int threads) {
  design.validate();
  design.weights.validate(part);

  ExperimentResult out;
  std::size_t total =
      design.spacings.size() * static_cast<std::size_t>(design.replicates);
  out.records.resize(total);

  parallel_chunks(static_cast<std::int64_t>(total), threads,
                  [&](std::int64_t begin, std::int64_t end, int) {
                    for (std::int64_t idx = begin; idx < end; ++idx) {
                      int ia = static_cast<int>(idx / design.replicates);
                      int rep = static_cast<int>(idx % design.replicates);
                      double a = design.spacings[ia];
                      ReplicateRecord rec;
                      rec.a = a;
                      rec.a_index = ia;
                      rec.replicate = rep;
                      SamplingMode mode = design.mode;
                      rec.pose = sample_pose(mode, design.phantom.dim, a, design.seed,
                                             ia, rep);
                      BinaryImage img =
                          voxelize(design.phantom, rec.pose, design.margin_factor * a);
                      ConfigHistogram hist = count_configurations(img, 1);
                      rec.class_counts = count_classes(hist, part);
                      rec.estimate = evaluate(design.weights, rec.class_counts, a);
                      out.records[idx] = std::move(rec);
                    }
                  });

  for (std::size_t ia = 0; ia < design.spacings.size(); ++ia) {
    SpacingSummary s;
    s.a = design.spacings[ia];
    s.n = design.replicates;
    double sum = 0.0;
    for (int r = 0; r < design.replicates; ++r)
      sum += out.records[ia * design.replicates + r].estimate;
    s.mean = sum / design.replicates;
    double var = 0.0;
    for (int r = 0; r < design.replicates; ++r) {
      double d = out.records[ia * design.replicates + r].estimate - s.mean;
      var += d * d;
    }
    var /= std::max(1, design.replicates - 1);
    s.std_error = std::sqrt(var / design.replicates);
    out.summary.push_back(s);
  }
  if (out.summary.size() >= 3) out.fit = fit_limits(out.summary);
  return out;
}

FitResult fit_limits(const std::vector<SpacingSummary>& summary) {
  if (summary.size() < 3)
    throw std::invalid_argument("fit needs at least three distinct spacings");
  // Weighted normal equations for y = c_minus1 * (1/a) + c0.
  double sxx = 0, sx1 = 0, s11 = 0, sxy = 0, s1y = 0;
  for (const auto& s : summary) {
    double se = std::max(s.std_error, 1e-30);
    double w = 1.0 / (se * se);
    double x = 1.0 / s.a;
    sxx += w * x * x;
    sx1 += w * x;
    s11 += w;
    sxy += w * x * s.mean;
    s1y += w * s.mean;
  }
  double det = sxx * s11 - sx1 * sx1;
  if (std::abs(det) < 1e-300) throw std::runtime_error("degenerate fit design");
  FitResult fit;
  fit.c_minus1 = (s11 * sxy - sx1 * s1y) / det;
  fit.c0 = (sxx * s1y - sx1 * sxy) / det;
  // Covariance of the WLS estimator is the inverse normal matrix.
  fit.sd_cminus1 = std::sqrt(s11 / det);
  fit.sd_c0 = std::sqrt(sxx / det);
  double rss = 0.0;
  for (const auto& s : summary) {
    double se = std::max(s.std_error, 1e-30);
    double pred = fit.c_minus1 / s.a + fit.c0;
    double d = (s.mean - pred) / se;
    rss += d * d;
  }
  fit.residual = rss;
  return fit;
}

HitmissReport hitmiss_vs_theory(const Phantom& ph, std::uint32_t mask,
                                const std::vector<double>& spacings, int replicates,
                                std::uint64_t seed, std::int64_t grid_budget) {
  HitmissReport report;
  report.mask = mask;
  ConfigSets cs = config_sets(mask, ph.dim);

  // First-order coefficient: boundary integral of (-h)^+ for this single
  // configuration.
  report.l1 = surface_integral(
                  ph,
                  [&](const SurfacePoint& sp) {
                    return first_order_density(cs.black, cs.white, sp.n);
                  },
                  1e-8)
                  .value;
  report.lambda = lambda_l(ph, mask, 1e-8);

  for (std::size_t ia = 0; ia < spacings.size(); ++ia) {
    double a = spacings[ia];
    HitmissRow row;
    row.a = a;

    double sum = 0.0, sum2 = 0.0;
    std::vector<double> vals(replicates, 0.0);
    parallel_chunks(replicates, 0, [&](std::int64_t b, std::int64_t e, int) {
      for (std::int64_t rep = b; rep < e; ++rep) {
        LatticePose pose = sample_pose(SamplingMode::Stationary, ph.dim, a, seed,
                                       static_cast<int>(ia), static_cast<int>(rep));
        BinaryImage img = voxelize(ph, pose, 2.0 * a);
        ConfigHistogram hist = count_configurations(img, 1);
        vals[rep] = std::pow(a, ph.dim) * static_cast<double>(hist.counts[mask]);
      }
    });
    for (double v : vals) sum += v;
    double mean = sum / replicates;
    for (double v : vals) sum2 += (v - mean) * (v - mean);
    row.mc_volume = mean;
    row.mc_se = std::sqrt(sum2 / std::max(1, replicates - 1) / replicates);

    HitMissResult grid =
        hit_or_miss_volume(ph, cs.black, cs.white, a, HitMissMethod::Grid, grid_budget);
    row.grid_volume = grid.value;
    row.grid_bound = grid.error_bound;

    row.first_order = a * report.l1;
    row.second_order = a * report.l1 + a * a * report.lambda;
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace voxelvol
