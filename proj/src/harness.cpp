#include "hadamard/harness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hadamard/euclidean.hpp"

namespace hadamard {
namespace {

// Stream salts keeping per-replication draws independent.
constexpr std::uint64_t kSaltContamination = 1;
constexpr std::uint64_t kSaltResample = 2;
constexpr std::uint64_t kSaltNoiseSheet = 3;

double to_unit(std::uint64_t word) { return static_cast<double>(word >> 11) * 0x1.0p-53; }

std::string estimator_list(const std::vector<EstimatorTag>& tags) {
  std::string out;
  for (const auto tag : tags) {
    if (!out.empty()) out += ",";
    out += estimator_name(tag);
  }
  return out;
}

template <GeodesicSpace S, class SpectralFn>
void collect_rows(const ExperimentConfig& config, const S& space,
                  std::span<const typename S::Point> data, const typename S::Point& reference,
                  const TraceGrid& grid, int replication, std::uint64_t rep_seed,
                  bool with_spectral, SpectralFn&& spectral, std::vector<RunRow>& rows) {
  for (const EstimatorTag tag : config.estimators) {
    MeanTrace<typename S::Point> trace;
    switch (tag) {
      case EstimatorTag::kInductive:
        trace = inductive_mean(space, data, grid);
        break;
      case EstimatorTag::kHansen:
        trace = hansen_mean(space, data, grid);
        break;
      case EstimatorTag::kResampled:
        trace = resampled_mean(space, data, mix_seed(rep_seed, kSaltResample), grid);
        break;
      case EstimatorTag::kLimPalfia: {
        trace.tag = EstimatorTag::kLimPalfia;
        for (const std::int64_t m : grid) {
          const double budget = std::pow(static_cast<double>(m), config.lp_budget_exponent);
          const std::int64_t k =
              std::max<std::int64_t>(m, static_cast<std::int64_t>(std::llround(budget)));
          auto lp = lim_palfia(space, data.first(static_cast<std::size_t>(m)), k,
                               DiameterMode::kApprox);
          trace.steps.push_back({m, std::move(lp.estimate), std::nullopt});
        }
        break;
      }
      case EstimatorTag::kEsSahib:
        throw std::invalid_argument(
            "run_experiment: es-sahib is not available as an experiment estimator");
    }
    for (const auto& step : trace.steps) {
      rows.push_back({config.experiment, tag, replication, step.n, Metric::kIntrinsic,
                      space.distance(step.estimate, reference)});
      if (with_spectral) {
        rows.push_back({config.experiment, tag, replication, step.n, Metric::kSpectral,
                        spectral(step.estimate, reference)});
      }
    }
  }
}

}  // namespace

const char* experiment_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kSpdDiagonal: return "spd-diagonal";
    case ExperimentKind::kOpenBook: return "open-book";
  }
  return "unknown";
}

const char* metric_name(Metric metric) {
  switch (metric) {
    case Metric::kIntrinsic: return "intrinsic";
    case Metric::kSpectral: return "spectral";
  }
  return "unknown";
}

const char* bound_generator_name(BoundGenerator gen) {
  switch (gen) {
    case BoundGenerator::kEuclideanHetero: return "euclidean-hetero";
    case BoundGenerator::kSpdCommutingHetero: return "spd-commuting-hetero";
  }
  return "unknown";
}

Eigen::MatrixXd spd_sequence_term(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("spd_sequence_term: index must be >= 1");
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2, 2);
  a(0, 0) = 0.1 + 1.0 / static_cast<double>(n);
  a(1, 1) = 10.0 + 1.0 / static_cast<double>(n);
  return a;
}

Eigen::MatrixXd spd_sequence_limit() {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2, 2);
  a(0, 0) = 0.1;
  a(1, 1) = 10.0;
  return a;
}

Eigen::MatrixXd spd_noise_matrix() { return 5.0 * Eigen::MatrixXd::Identity(2, 2); }

BookPoint book_sequence_term(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("book_sequence_term: index must be >= 1");
  BookPoint p;
  p.sheet = 1;
  p.t = 1.0 + 2.0 / static_cast<double>(n);
  p.spine = Eigen::VectorXd::Constant(1, 10.0 - 1.0 / std::sqrt(static_cast<double>(n)));
  return p;
}

BookPoint book_sequence_limit() {
  BookPoint p;
  p.sheet = 1;
  p.t = 1.0;
  p.spine = Eigen::VectorXd::Constant(1, 10.0);
  return p;
}

BookPoint book_noise_point(int sheet) {
  BookPoint p;
  p.sheet = sheet;
  p.t = 1.0;
  p.spine = Eigen::VectorXd::Constant(1, 10.0);
  return p;
}

void ExperimentConfig::validate() const {
  if (n_max < 1) throw std::invalid_argument("config field n-max must be >= 1");
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("config field epsilon must lie in [0,1]");
  }
  if (replications < 1) throw std::invalid_argument("config field replications must be >= 1");
  if (trace_stride < 0) throw std::invalid_argument("config field trace-stride must be >= 0");
  if (!(lp_budget_exponent >= 1.0)) {
    throw std::invalid_argument("config field lp-exponent must be >= 1");
  }
  if (estimators.empty()) throw std::invalid_argument("config field estimators must be nonempty");
  for (const EstimatorTag tag : estimators) {
    if (tag == EstimatorTag::kEsSahib) {
      throw std::invalid_argument(
          "config field estimators: es-sahib is not an experiment estimator (got " +
          estimator_list(estimators) + ")");
    }
  }
}

TraceGrid ExperimentConfig::trace_grid() const {
  return trace_stride == 0 ? trace_log(n_max) : trace_strided(n_max, trace_stride);
}

RunResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  RunResult result;
  result.config_echo = config;
  const TraceGrid grid = config.trace_grid();

  for (int r = 0; r < config.replications; ++r) {
    const std::uint64_t rep_seed = mix_seed(config.base_seed, static_cast<std::uint64_t>(r));
    const ContaminationSpec spec{config.epsilon, mix_seed(rep_seed, kSaltContamination)};

    if (config.experiment == ExperimentKind::kSpdDiagonal) {
      std::vector<Eigen::MatrixXd> raw;
      raw.reserve(static_cast<std::size_t>(config.n_max));
      for (std::int64_t n = 1; n <= config.n_max; ++n) raw.push_back(spd_sequence_term(n));
      const Eigen::MatrixXd noise = spd_noise_matrix();
      const auto data = huber_contaminate(std::span<const Eigen::MatrixXd>(raw), spec,
                                          [&](std::uint64_t, std::size_t) { return noise; });
      const SpdSpace space(2);
      collect_rows(config, space, std::span<const Eigen::MatrixXd>(data), spd_sequence_limit(),
                   grid, r, rep_seed, /*with_spectral=*/true, spectral_distance, result.rows);
    } else {
      std::vector<BookPoint> raw;
      raw.reserve(static_cast<std::size_t>(config.n_max));
      for (std::int64_t n = 1; n <= config.n_max; ++n) raw.push_back(book_sequence_term(n));
      const auto data = huber_contaminate(
          std::span<const BookPoint>(raw), spec, [&](std::uint64_t word, std::size_t) {
            const int sheet =
                static_cast<int>(bounded(splitmix64(word + kSaltNoiseSheet),
                                         static_cast<std::uint64_t>(kBookExperimentSheets))) +
                1;
            return book_noise_point(sheet);
          });
      const BookSpace space(kBookExperimentSheets, 1);
      collect_rows(config, space, std::span<const BookPoint>(data), book_sequence_limit(), grid,
                   r, rep_seed, /*with_spectral=*/false,
                   [](const BookPoint&, const BookPoint&) { return 0.0; }, result.rows);
    }
  }

  std::sort(result.rows.begin(), result.rows.end(), [](const RunRow& a, const RunRow& b) {
    const int ea = std::string_view(estimator_name(a.estimator))
                       .compare(estimator_name(b.estimator));
    if (ea != 0) return ea < 0;
    if (a.replication != b.replication) return a.replication < b.replication;
    if (a.n != b.n) return a.n < b.n;
    return std::string_view(metric_name(a.metric)).compare(metric_name(b.metric)) < 0;
  });
  return result;
}

namespace {

// Heteroscedastic generators with analytically known means and variances:
// the per-step mean drifts toward mu as offset/k and the noise is supported
// on a sphere (flat case) or a symmetric two-point set in the commuting
// slice, so Var(X_k) = sigma_k^2 exactly.
double sigma_at(std::int64_t k, std::uint64_t salt) {
  return 0.4 + 0.6 * to_unit(splitmix64(static_cast<std::uint64_t>(k) * 2654435761ULL + salt));
}

struct EuclideanHetero {
  EuclideanSpace space{2};
  Eigen::VectorXd mu = Eigen::VectorXd::Zero(2);

  Eigen::VectorXd mean_at(std::int64_t k) const {
    Eigen::VectorXd m(2);
    const double inv = 1.0 / static_cast<double>(k);
    m << inv * 0.7071067811865476, inv * 0.7071067811865476;
    return m;
  }

  Eigen::VectorXd draw(std::int64_t k, std::uint64_t rep_seed) const {
    const double sigma = sigma_at(k, 11);
    const double theta = 6.283185307179586 *
                         to_unit(mix_seed(rep_seed, static_cast<std::uint64_t>(k)));
    Eigen::VectorXd x = mean_at(k);
    x[0] += sigma * std::cos(theta);
    x[1] += sigma * std::sin(theta);
    return x;
  }
};

struct SpdHetero {
  SpdSpace space{2};
  Eigen::MatrixXd mu = (Eigen::MatrixXd(2, 2) << 0.5, 0.0, 0.0, 2.0).finished();

  Eigen::MatrixXd from_log(double l0, double l1) const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
    m(0, 0) = std::exp(l0);
    m(1, 1) = std::exp(l1);
    return m;
  }

  Eigen::MatrixXd mean_at(std::int64_t k) const {
    const double inv = 1.0 / static_cast<double>(k);
    return from_log(std::log(0.5) + inv * 0.7071067811865476,
                    std::log(2.0) - inv * 0.7071067811865476);
  }

  Eigen::MatrixXd draw(std::int64_t k, std::uint64_t rep_seed) const {
    const double sigma = sigma_at(k, 13);
    const double rho =
        (mix_seed(rep_seed, static_cast<std::uint64_t>(k)) & 1ULL) ? 1.0 : -1.0;
    const double inv = 1.0 / static_cast<double>(k);
    const double step = sigma * rho * 0.7071067811865476;
    return from_log(std::log(0.5) + inv * 0.7071067811865476 + step,
                    std::log(2.0) - inv * 0.7071067811865476 + step);
  }
};

template <class Gen>
BoundCheckReport bound_check_impl(const Gen& gen, BoundGenerator tag,
                                  std::span<const std::int64_t> n_grid, int replications,
                                  std::uint64_t base_seed) {
  if (n_grid.empty()) throw std::invalid_argument("monte_carlo_bound_check: empty grid");
  if (replications < 2) {
    throw std::invalid_argument("monte_carlo_bound_check: need at least 2 replications");
  }
  std::vector<std::int64_t> grid(n_grid.begin(), n_grid.end());
  std::sort(grid.begin(), grid.end());
  const std::int64_t n_max = grid.back();
  if (grid.front() < 1) throw std::invalid_argument("monte_carlo_bound_check: grid must be >= 1");

  BoundParams<decltype(gen.space)> params;
  params.mu = gen.mu;
  params.mu_n.reserve(static_cast<std::size_t>(n_max));
  params.var_n.reserve(static_cast<std::size_t>(n_max));
  for (std::int64_t k = 1; k <= n_max; ++k) {
    params.mu_n.push_back(gen.mean_at(k));
    const double sigma = sigma_at(k, tag == BoundGenerator::kEuclideanHetero ? 11 : 13);
    params.var_n.push_back(sigma * sigma);
  }

  std::vector<double> sum(grid.size(), 0.0);
  std::vector<double> sum_sq(grid.size(), 0.0);
  for (int r = 0; r < replications; ++r) {
    const std::uint64_t rep_seed = mix_seed(base_seed, static_cast<std::uint64_t>(r));
    auto cur = gen.draw(1, rep_seed);
    std::size_t gi = 0;
    for (std::int64_t m = 1; m <= n_max; ++m) {
      if (m > 1) {
        detail::interpolate_into(gen.space, cur, cur, gen.draw(m, rep_seed),
                                 1.0 / static_cast<double>(m));
      }
      if (gi < grid.size() && grid[gi] == m) {
        const double d = gen.space.distance(cur, gen.mu);
        sum[gi] += d * d;
        sum_sq[gi] += d * d * d * d;
        ++gi;
      }
    }
  }

  BoundCheckReport report;
  report.generator = tag;
  report.replications = replications;
  report.pass = true;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    BoundCheckRow row;
    row.n = grid[i];
    const double reps = static_cast<double>(replications);
    row.empirical = sum[i] / reps;
    const double var = std::max(0.0, sum_sq[i] / reps - row.empirical * row.empirical);
    row.half_width = 3.0 * std::sqrt(var / reps);
    row.bound = slln_bound(gen.space, params, grid[i]);
    row.pass = row.empirical - row.half_width <= row.bound;
    report.pass = report.pass && row.pass;
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace

BoundCheckReport monte_carlo_bound_check(BoundGenerator generator,
                                         std::span<const std::int64_t> n_grid,
                                         int replications, std::uint64_t base_seed) {
  if (generator == BoundGenerator::kEuclideanHetero) {
    return bound_check_impl(EuclideanHetero{}, generator, n_grid, replications, base_seed);
  }
  return bound_check_impl(SpdHetero{}, generator, n_grid, replications, base_seed);
}

}  // namespace hadamard
