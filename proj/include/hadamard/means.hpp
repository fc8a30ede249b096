#pragma once

#include <algorithm>
#include <cstdio>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hadamard/frechet.hpp"
#include "hadamard/geometry.hpp"
#include "hadamard/rng.hpp"

namespace hadamard {

enum class EstimatorTag { kInductive, kHansen, kEsSahib, kResampled, kLimPalfia };

inline const char* estimator_name(EstimatorTag tag) {
  switch (tag) {
    case EstimatorTag::kInductive: return "inductive";
    case EstimatorTag::kHansen: return "hansen";
    case EstimatorTag::kEsSahib: return "es-sahib";
    case EstimatorTag::kResampled: return "resampled";
    case EstimatorTag::kLimPalfia: return "lim-palfia";
  }
  return "unknown";
}

template <class Point>
struct MeanStep {
  std::int64_t n = 0;
  Point estimate;
  std::optional<double> dist_to_reference;
};

// Per-step record of a sequential estimator.
template <class Point>
struct MeanTrace {
  EstimatorTag tag = EstimatorTag::kInductive;
  std::optional<std::uint64_t> seed;
  std::vector<MeanStep<Point>> steps;

  const Point& final_estimate() const {
    if (steps.empty()) throw std::logic_error("MeanTrace: empty trace");
    return steps.back().estimate;
  }
};

// Fills dist_to_reference for every recorded step.
template <GeodesicSpace S>
void attach_reference(const S& space, MeanTrace<typename S::Point>& trace,
                      const typename S::Point& reference) {
  for (auto& step : trace.steps) {
    step.dist_to_reference = space.distance(step.estimate, reference);
  }
}

// Strictly increasing prefix lengths at which an estimator is recorded.
using TraceGrid = std::vector<std::int64_t>;

inline TraceGrid trace_every(std::int64_t n) {
  TraceGrid grid(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) grid[static_cast<std::size_t>(i)] = i + 1;
  return grid;
}

inline TraceGrid trace_strided(std::int64_t n, std::int64_t stride) {
  if (stride < 1) throw std::invalid_argument("trace_strided: stride must be >= 1");
  TraceGrid grid;
  grid.push_back(1);
  for (std::int64_t m = stride; m <= n; m += stride) {
    if (m != grid.back()) grid.push_back(m);
  }
  if (grid.back() != n) grid.push_back(n);
  return grid;
}

// 1..10 then geometric steps; always contains n. Keeps quadratic-cost
// estimators affordable on long runs.
inline TraceGrid trace_log(std::int64_t n, double ratio = 1.25) {
  TraceGrid grid;
  for (std::int64_t m = 1; m <= std::min<std::int64_t>(10, n); ++m) grid.push_back(m);
  double next = 10.0 * ratio;
  while (static_cast<std::int64_t>(next) < n) {
    const std::int64_t m = static_cast<std::int64_t>(next);
    if (m > grid.back()) grid.push_back(m);
    next *= ratio;
  }
  if (grid.back() != n) grid.push_back(n);
  return grid;
}

namespace detail {

inline void validate_grid(const TraceGrid& grid, std::int64_t n, const char* who) {
  std::int64_t prev = 0;
  for (std::int64_t m : grid) {
    if (m <= prev || m > n) {
      throw std::invalid_argument(std::string(who) +
                                  ": trace grid must be strictly increasing within 1..n");
    }
    prev = m;
  }
}

}  // namespace detail

// Streaming inductive mean S_1 = x_1, S_{m+1} = S_m (+)_{1/(m+1)} x_{m+1};
// exactly n-1 geodesic evaluations.
template <GeodesicSpace S>
MeanTrace<typename S::Point> inductive_mean(const S& space,
                                            std::span<const typename S::Point> points,
                                            const TraceGrid& grid) {
  if (points.empty()) throw std::invalid_argument("inductive_mean: empty input");
  const std::int64_t n = static_cast<std::int64_t>(points.size());
  detail::validate_grid(grid, n, "inductive_mean");
  MeanTrace<typename S::Point> trace;
  trace.tag = EstimatorTag::kInductive;
  typename S::Point cur = points[0];
  std::size_t gi = 0;
  auto record = [&](std::int64_t m) {
    if (gi < grid.size() && grid[gi] == m) {
      trace.steps.push_back({m, cur, std::nullopt});
      ++gi;
    }
  };
  record(1);
  for (std::int64_t m = 2; m <= n; ++m) {
    detail::interpolate_into(space, cur, cur, points[static_cast<std::size_t>(m - 1)],
                             1.0 / static_cast<double>(m));
    record(m);
  }
  return trace;
}

template <GeodesicSpace S>
MeanTrace<typename S::Point> inductive_mean(const S& space,
                                            std::span<const typename S::Point> points) {
  return inductive_mean(space, points, trace_every(static_cast<std::int64_t>(points.size())));
}

namespace detail {

// One exact evaluation of the Hansen mean of `pts` in O(n^2) geodesic
// evaluations: repeatedly contract the tuple toward its last element at
// weight 1/m and drop it.
template <GeodesicSpace S>
typename S::Point hansen_eval(const S& space, std::span<const typename S::Point> pts,
                              std::vector<typename S::Point>& work) {
  const std::size_t n = pts.size();
  if (n == 1) return pts[0];
  work.assign(pts.begin(), pts.end());
  for (std::size_t m = n; m >= 2; --m) {
    const double w = 1.0 / static_cast<double>(m);
    for (std::size_t i = 0; i + 1 < m; ++i) {
      interpolate_into(space, work[i], work[i], work[m - 1], w);
    }
  }
  return work[0];
}

}  // namespace detail

// Hansen's recursive mean. Each recorded prefix is evaluated exactly, so a
// full trace costs O(sum m^2) evaluations; pass a sparse grid for long runs.
template <GeodesicSpace S>
MeanTrace<typename S::Point> hansen_mean(const S& space,
                                         std::span<const typename S::Point> points,
                                         const TraceGrid& grid) {
  if (points.empty()) throw std::invalid_argument("hansen_mean: empty input");
  const std::int64_t n = static_cast<std::int64_t>(points.size());
  detail::validate_grid(grid, n, "hansen_mean");
  MeanTrace<typename S::Point> trace;
  trace.tag = EstimatorTag::kHansen;
  std::vector<typename S::Point> work;
  for (std::int64_t m : grid) {
    trace.steps.push_back(
        {m, detail::hansen_eval(space, points.first(static_cast<std::size_t>(m)), work),
         std::nullopt});
  }
  return trace;
}

template <GeodesicSpace S>
MeanTrace<typename S::Point> hansen_mean(const S& space,
                                         std::span<const typename S::Point> points) {
  return hansen_mean(space, points, trace_every(static_cast<std::int64_t>(points.size())));
}

inline constexpr int kEsSahibMaxPoints = 8;

namespace detail {

template <GeodesicSpace S>
class EsSahibSolver {
  using Point = typename S::Point;

 public:
  EsSahibSolver(const S& space, double tol, int max_rounds)
      : space_(space), tol_(tol), max_rounds_(max_rounds) {}

  Point run(std::span<const Point> pts) {
    const std::size_t n = pts.size();
    cur_.resize(n + 1);
    next_.resize(n + 1);
    for (std::size_t m = 1; m <= n; ++m) {
      cur_[m].resize(m);
      next_[m].resize(m);
    }
    cur_[n].assign(pts.begin(), pts.end());
    Point out = pts[0];
    solve_into(out, n, tol_);
    return out;
  }

 private:
  double tuple_diameter(const std::vector<Point>& tuple) const {
    double best = 0.0;
    for (std::size_t i = 0; i < tuple.size(); ++i) {
      for (std::size_t j = i + 1; j < tuple.size(); ++j) {
        best = std::max(best, space_.distance(tuple[i], tuple[j]));
      }
    }
    return best;
  }

  // Evaluates the mean of cur_[m] into `out`. The recursion consumes the
  // level buffers strictly below m, so reentry per level is safe. Inner
  // evaluations run at tol/4 so their errors cannot hold the outer tuple
  // diameter above its own threshold.
  void solve_into(Point& out, std::size_t m, double tol) {
    auto& cur = cur_[m];
    if (m == 1) {
      out = cur[0];
      return;
    }
    if (m == 2) {
      interpolate_into(space_, out, cur[0], cur[1], 0.5);
      return;
    }
    double diam = tuple_diameter(cur);
    for (int round = 0; round < max_rounds_; ++round) {
      if (diam <= tol) {
        out = cur[0];
        return;
      }
      auto& next = next_[m];
      auto& sub = cur_[m - 1];
      for (std::size_t drop = 0; drop < m; ++drop) {
        std::size_t w = 0;
        for (std::size_t i = 0; i < m; ++i) {
          if (i != drop) sub[w++] = cur[i];
        }
        solve_into(next[drop], m - 1, 0.25 * tol);
      }
      cur.swap(next);
      diam = tuple_diameter(cur);
    }
    char detail[64];
    std::snprintf(detail, sizeof(detail), "%.3g", diam);
    throw ConvergenceError("es_sahib_mean: tuple diameter " + std::string(detail) +
                               " above tolerance after " + std::to_string(max_rounds_) +
                               " rounds",
                           diam);
  }

  const S& space_;
  double tol_;
  int max_rounds_;
  // cur_[m] / next_[m] are the working tuples of size m.
  std::vector<std::vector<Point>> cur_;
  std::vector<std::vector<Point>> next_;
};

}  // namespace detail

// Axiomatic mean of Es-Sahib and Heinich, evaluated by iterating the
// leave-one-out map x_i -> mean of the other n-1 points (recursively) until
// the tuple collapses. The recursion is exponential in n, hence the hard cap.
template <GeodesicSpace S>
typename S::Point es_sahib_mean(const S& space, std::span<const typename S::Point> points,
                                double tol = 1e-9, int max_rounds = 200,
                                int n_cap = kEsSahibMaxPoints) {
  if (points.empty()) throw std::invalid_argument("es_sahib_mean: empty input");
  if (!(tol > 0.0)) throw std::invalid_argument("es_sahib_mean: tolerance must be positive");
  if (static_cast<int>(points.size()) > n_cap) {
    throw CapacityError("es_sahib_mean: " + std::to_string(points.size()) +
                        " points exceed the cap of " + std::to_string(n_cap));
  }
  detail::EsSahibSolver<S> solver(space, tol, max_rounds);
  return solver.run(points);
}

// Stochastic resampling estimator: at step m fold a uniform draw from the
// first m points at weight 1/m. The draw at step m is a pure function of
// (seed, m), so traces replay deterministically and extend under streaming.
template <GeodesicSpace S>
MeanTrace<typename S::Point> resampled_mean(const S& space,
                                            std::span<const typename S::Point> points,
                                            std::uint64_t seed, const TraceGrid& grid) {
  if (points.empty()) throw std::invalid_argument("resampled_mean: empty input");
  const std::int64_t n = static_cast<std::int64_t>(points.size());
  detail::validate_grid(grid, n, "resampled_mean");
  MeanTrace<typename S::Point> trace;
  trace.tag = EstimatorTag::kResampled;
  trace.seed = seed;
  typename S::Point cur = points[0];
  std::size_t gi = 0;
  auto record = [&](std::int64_t m) {
    if (gi < grid.size() && grid[gi] == m) {
      trace.steps.push_back({m, cur, std::nullopt});
      ++gi;
    }
  };
  record(1);
  for (std::int64_t m = 2; m <= n; ++m) {
    const std::uint64_t draw = bounded(mix_seed(seed, static_cast<std::uint64_t>(m)),
                                       static_cast<std::uint64_t>(m));
    detail::interpolate_into(space, cur, cur, points[static_cast<std::size_t>(draw)],
                             1.0 / static_cast<double>(m));
    record(m);
  }
  return trace;
}

template <GeodesicSpace S>
MeanTrace<typename S::Point> resampled_mean(const S& space,
                                            std::span<const typename S::Point> points,
                                            std::uint64_t seed) {
  return resampled_mean(space, points, seed,
                        trace_every(static_cast<std::int64_t>(points.size())));
}

// Weighted Frechet mean through the weighted cyclic scheme; the step budget
// is lp_cycles passes over the points.
template <GeodesicSpace S>
typename S::Point weighted_mean_toeplitz(const S& space,
                                         std::span<const typename S::Point> points,
                                         std::span<const double> weights,
                                         std::int64_t lp_cycles) {
  if (lp_cycles < 1) throw std::invalid_argument("weighted_mean_toeplitz: cycles must be >= 1");
  return lim_palfia(space, points, weights,
                    lp_cycles * static_cast<std::int64_t>(points.size()))
      .estimate;
}

// Per-step means and variances of an independent heteroscedastic sequence,
// against a limit point mu.
template <GeodesicSpace S>
struct BoundParams {
  typename S::Point mu;
  std::vector<typename S::Point> mu_n;
  std::vector<double> var_n;
};

// Quadratic-mean error bound for the inductive mean of independent draws:
//   (9 D_n / n) sum_{k<=n} d(mu_k, mu) + n^-2 sum_{k<=n} Var(X_k),
// with D_n the running maximum of d(mu, mu_k) and sqrt(Var(X_k)).
template <GeodesicSpace S>
double slln_bound(const S& space, const BoundParams<S>& params, std::int64_t n) {
  if (params.mu_n.size() != params.var_n.size()) {
    throw std::invalid_argument("slln_bound: mu_n and var_n length mismatch");
  }
  if (n < 1 || n > static_cast<std::int64_t>(params.mu_n.size())) {
    throw std::invalid_argument("slln_bound: index " + std::to_string(n) +
                                " outside the parameter lists");
  }
  double drift_sum = 0.0;
  double drift_max = 0.0;
  double var_sum = 0.0;
  double var_max = 0.0;
  for (std::int64_t k = 0; k < n; ++k) {
    const double var = params.var_n[static_cast<std::size_t>(k)];
    if (!(var >= 0.0)) throw std::invalid_argument("slln_bound: negative variance");
    const double d = space.distance(params.mu, params.mu_n[static_cast<std::size_t>(k)]);
    drift_sum += d;
    drift_max = std::max(drift_max, d);
    var_sum += var;
    var_max = std::max(var_max, var);
  }
  const double dn = std::max(drift_max, std::sqrt(var_max));
  const double nn = static_cast<double>(n);
  return 9.0 * dn / nn * drift_sum + var_sum / (nn * nn);
}

}  // namespace hadamard
