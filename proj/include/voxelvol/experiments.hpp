#pragma once

#include <cstdint>
#include <vector>

#include "voxelvol/asymptotics.hpp"
#include "voxelvol/configs.hpp"
#include "voxelvol/estimators.hpp"
#include "voxelvol/imaging.hpp"
#include "voxelvol/phantoms.hpp"

namespace voxelvol {

// Counter-based stream: the state is a hash of (seed, stream ids), so
// replicates are order-independent and parallel-safe.
struct StreamRng {
  std::uint64_t state;

  explicit StreamRng(std::uint64_t seed, std::uint64_t s1 = 0, std::uint64_t s2 = 0);
  std::uint64_t next_u64();
  double next_unit();  // [0,1)
};

enum class SamplingMode { Stationary, Isotropic };

LatticePose sample_pose(SamplingMode mode, int dim, double a, std::uint64_t seed,
                        int a_index, int replicate);

struct DesignSpec {
  Phantom phantom;
  WeightVector weights;
  SamplingMode mode = SamplingMode::Stationary;
  std::vector<double> spacings;
  int replicates = 2;
  std::uint64_t seed = 1;
  double margin_factor = 2.0;  // margin = factor * a

  void validate() const;
};

struct ReplicateRecord {
  double a = 0.0;
  int a_index = 0;
  int replicate = 0;
  LatticePose pose;
  std::vector<std::int64_t> class_counts;
  double estimate = 0.0;
};

struct SpacingSummary {
  double a = 0.0;
  double mean = 0.0;
  double std_error = 0.0;
  int n = 0;
};

struct FitResult {
  double c_minus1 = 0.0;  // coefficient of 1/a
  double c0 = 0.0;
  double residual = 0.0;  // weighted RSS
  double sd_cminus1 = 0.0;
  double sd_c0 = 0.0;
};

struct ExperimentResult {
  std::vector<ReplicateRecord> records;
  std::vector<SpacingSummary> summary;
  FitResult fit;
};

// Voxelize/count/evaluate for every (a, replicate); deterministic given the
// seed, independent of thread schedule.
ExperimentResult run(const DesignSpec& design, const ClassPartition& part,
                     int threads = 0);

// Weighted least squares of the per-spacing means against c_minus1/a + c0.
FitResult fit_limits(const std::vector<SpacingSummary>& summary);

// Hit-or-miss cross-validation for one configuration: empirical a^d E N_l
// versus the direct hit-or-miss volume versus the asymptotic prediction.
struct HitmissRow {
  double a = 0.0;
  double mc_volume = 0.0;  // a^d * mean(N_l)
  double mc_se = 0.0;
  double grid_volume = 0.0;
  double grid_bound = 0.0;
  double first_order = 0.0;   // a * L1
  double second_order = 0.0;  // a * L1 + a^2 * lambda_l
};

struct HitmissReport {
  std::uint32_t mask = 0;
  double l1 = 0.0;      // first-order surface integral of the configuration
  double lambda = 0.0;  // lambda_l
  std::vector<HitmissRow> rows;
};

HitmissReport hitmiss_vs_theory(const Phantom& ph, std::uint32_t mask,
                                const std::vector<double>& spacings, int replicates,
                                std::uint64_t seed, std::int64_t grid_budget = 40'000'000);

}  // namespace voxelvol
