#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hadamard/means.hpp"
#include "hadamard/open_book.hpp"
#include "hadamard/rng.hpp"
#include "hadamard/spd.hpp"

namespace hadamard {

enum class ExperimentKind { kSpdDiagonal, kOpenBook };
enum class Metric { kIntrinsic, kSpectral };

const char* experiment_name(ExperimentKind kind);
const char* metric_name(Metric metric);

// Independent replacement of each element with noise, probability epsilon
// per index. Replacement decisions and noise draws are pure functions of
// (seed, index).
struct ContaminationSpec {
  double epsilon = 0.0;
  std::uint64_t seed = 0;
};

// `noise(word, index)` builds the replacement for `index` from a fresh
// 64-bit random word.
template <class Point, class NoiseFn>
std::vector<Point> huber_contaminate(std::span<const Point> seq, const ContaminationSpec& spec,
                                     NoiseFn&& noise) {
  if (!(spec.epsilon >= 0.0 && spec.epsilon <= 1.0)) {
    throw std::invalid_argument("huber_contaminate: epsilon must lie in [0,1]");
  }
  std::vector<Point> out(seq.begin(), seq.end());
  if (spec.epsilon == 0.0) return out;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double u =
        static_cast<double>(mix_seed(spec.seed, 2 * i) >> 11) * 0x1.0p-53;
    if (u < spec.epsilon) {
      out[i] = noise(mix_seed(spec.seed, 2 * i + 1), i);
    }
  }
  return out;
}

// Diagonal benchmark sequence diag(1/10 + 1/n, 10 + 1/n) with limit
// diag(1/10, 10) and noise matrix 5I.
Eigen::MatrixXd spd_sequence_term(std::int64_t n);
Eigen::MatrixXd spd_sequence_limit();
Eigen::MatrixXd spd_noise_matrix();

// Open-book benchmark sequence ((1 + 2/n, 10 - 1/sqrt(n)), sheet 1) in B_3^1
// with limit ((1, 10), 1); noise keeps coordinates (1, 10) on a uniformly
// random sheet.
BookPoint book_sequence_term(std::int64_t n);
BookPoint book_sequence_limit();
BookPoint book_noise_point(int sheet);
inline constexpr int kBookExperimentSheets = 3;

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::kSpdDiagonal;
  std::int64_t n_max = 5000;
  double epsilon = 0.0;
  std::uint64_t base_seed = 0;
  int replications = 20;
  std::vector<EstimatorTag> estimators = {EstimatorTag::kInductive, EstimatorTag::kHansen,
                                          EstimatorTag::kResampled};
  double lp_budget_exponent = 2.0;  // cyclic scheme budget k = n^exponent
  std::int64_t trace_stride = 0;    // 0: log-spaced grid, >= 1: linear stride

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
  TraceGrid trace_grid() const;
  bool operator==(const ExperimentConfig&) const = default;
};

struct RunRow {
  ExperimentKind experiment;
  EstimatorTag estimator;
  int replication = 0;
  std::int64_t n = 0;
  Metric metric = Metric::kIntrinsic;
  double value = 0.0;
};

struct RunResult {
  std::vector<RunRow> rows;  // sorted by (estimator, replication, n, metric)
  ExperimentConfig config_echo;
};

// Runs every requested estimator on every contaminated replication and
// records the distance to the limit point at each traced prefix: intrinsic
// always, spectral additionally for the matrix experiment. Replication r
// depends only on (base_seed, r).
RunResult run_experiment(const ExperimentConfig& config);

enum class BoundGenerator { kEuclideanHetero, kSpdCommutingHetero };

const char* bound_generator_name(BoundGenerator gen);

struct BoundCheckRow {
  std::int64_t n = 0;
  double empirical = 0.0;   // mean of d(S_n, mu)^2 over replications
  double half_width = 0.0;  // 3 sigma / sqrt(replications)
  double bound = 0.0;
  bool pass = false;  // empirical - half_width <= bound
};

struct BoundCheckReport {
  BoundGenerator generator = BoundGenerator::kEuclideanHetero;
  int replications = 0;
  std::vector<BoundCheckRow> rows;
  bool pass = false;
};

// Monte-Carlo check of the heteroscedastic quadratic-mean bound on
// generators with analytically known per-step means and variances.
BoundCheckReport monte_carlo_bound_check(BoundGenerator generator,
                                         std::span<const std::int64_t> n_grid,
                                         int replications, std::uint64_t base_seed);

}  // namespace hadamard
