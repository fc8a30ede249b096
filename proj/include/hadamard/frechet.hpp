#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "hadamard/euclidean.hpp"
#include "hadamard/geometry.hpp"
#include "hadamard/open_book.hpp"
#include "hadamard/spd.hpp"

namespace hadamard {

// Output of the cyclic inductive barycenter approximation together with the
// data needed for its a-priori error certificate 2 * diam * sqrt(n / k).
template <class Point>
struct LpResult {
  Point estimate;
  std::int64_t n_points = 0;
  std::int64_t cycles_used = 0;  // total inductive steps k
  double diameter = 0.0;

  double error_certificate() const {
    if (cycles_used <= 0) return 0.0;
    return 2.0 * diameter *
           std::sqrt(static_cast<double>(n_points) / static_cast<double>(cycles_used));
  }
};

enum class DiameterMode { kExact, kApprox };

namespace detail {

// Deterministic weighted cycling: step m picks the index with the largest
// deficit w_i * m - emitted_i, ties resolved toward the lowest index. Over
// every prefix the emission counts match the largest-remainder quotas, and
// exactly uniform weights reduce to plain cyclic order.
class WeightedScheduler {
 public:
  explicit WeightedScheduler(std::span<const double> weights)
      : weights_(weights.begin(), weights.end()), emitted_(weights.size(), 0.0) {}

  std::size_t pick(std::int64_t step) {
    std::size_t best = 0;
    double best_deficit = weights_[0] * static_cast<double>(step) - emitted_[0];
    for (std::size_t i = 1; i < weights_.size(); ++i) {
      const double deficit = weights_[i] * static_cast<double>(step) - emitted_[i];
      if (deficit > best_deficit) {
        best_deficit = deficit;
        best = i;
      }
    }
    emitted_[best] += 1.0;
    return best;
  }

 private:
  std::vector<double> weights_;
  std::vector<double> emitted_;
};

}  // namespace detail

// Cyclic inductive approximation of the (weighted) Frechet mean: the
// inductive mean of the input repeated cyclically, run for `total_steps`
// geodesic evaluations. Pass an empty weight span for the uniform mean.
template <GeodesicSpace S>
LpResult<typename S::Point> lim_palfia(const S& space,
                                       std::span<const typename S::Point> points,
                                       std::span<const double> weights,
                                       std::int64_t total_steps,
                                       DiameterMode diam_mode = DiameterMode::kExact) {
  const std::int64_t n = static_cast<std::int64_t>(points.size());
  if (n == 0) throw std::invalid_argument("lim_palfia: empty input");
  if (total_steps < n) {
    throw std::invalid_argument("lim_palfia: step budget " + std::to_string(total_steps) +
                                " is below the point count " + std::to_string(n));
  }
  bool uniform = weights.empty();
  if (!uniform) {
    detail::require_weights(weights, points.size(), "lim_palfia");
    uniform = true;
    for (double w : weights) uniform = uniform && (w == weights[0]);
  }

  LpResult<typename S::Point> result;
  result.n_points = n;
  result.cycles_used = total_steps;
  result.diameter = (diam_mode == DiameterMode::kExact) ? diameter(space, points)
                                                        : diameter_approx(space, points);

  if (uniform) {
    typename S::Point cur = points[0];
    for (std::int64_t m = 2; m <= total_steps; ++m) {
      detail::interpolate_into(space, cur, cur, points[(m - 1) % n], 1.0 / static_cast<double>(m));
    }
    result.estimate = std::move(cur);
    return result;
  }

  detail::WeightedScheduler scheduler(weights);
  typename S::Point cur = points[scheduler.pick(1)];
  for (std::int64_t m = 2; m <= total_steps; ++m) {
    detail::interpolate_into(space, cur, cur, points[scheduler.pick(m)],
                             1.0 / static_cast<double>(m));
  }
  result.estimate = std::move(cur);
  return result;
}

template <GeodesicSpace S>
LpResult<typename S::Point> lim_palfia(const S& space,
                                       std::span<const typename S::Point> points,
                                       std::int64_t total_steps,
                                       DiameterMode diam_mode = DiameterMode::kExact) {
  return lim_palfia(space, points, std::span<const double>{}, total_steps, diam_mode);
}

// Exact weighted barycenters where a closed form exists. These are the
// reference values the iterative schemes are checked against.
inline Eigen::VectorXd frechet_oracle(const EuclideanSpace& space,
                                      std::span<const Eigen::VectorXd> points,
                                      std::span<const double> weights) {
  if (points.empty()) throw std::invalid_argument("frechet_oracle: empty input");
  detail::require_weights(weights, points.size(), "frechet_oracle");
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(space.dim());
  for (std::size_t i = 0; i < points.size(); ++i) mean += weights[i] * points[i];
  return mean;
}

inline Eigen::MatrixXd frechet_oracle(const SpdSpace&, std::span<const Eigen::MatrixXd> points,
                                      std::span<const double> weights) {
  return commuting_barycenter(points, weights);
}

inline BookPoint frechet_oracle(const BookSpace& space, std::span<const BookPoint> points,
                                std::span<const double> weights) {
  return book_frechet(space, points, weights);
}

template <GeodesicSpace S>
auto frechet_oracle(const S& space, std::span<const typename S::Point> points) {
  const std::vector<double> weights(points.size(), 1.0 / static_cast<double>(points.size()));
  return frechet_oracle(space, points, std::span<const double>(weights));
}

}  // namespace hadamard
