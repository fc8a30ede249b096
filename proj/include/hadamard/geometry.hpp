#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hadamard/rng.hpp"

namespace hadamard {

// Distance below which two points are treated as equal.
inline constexpr double kPointTol = 1e-10;

// A numerical routine failed to produce a usable result (eigensolver
// breakdown, I/O failure on emission paths, ...).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input exceeds a hard size limit of an algorithm.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Filesystem read/write failure on an emission path.
class IoError : public NumericError {
 public:
  using NumericError::NumericError;
};

// An iterative scheme ran out of its round budget.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_ = 0.0;
};

// Geodesic metric space contract: a distance and the point x (+)_t y on the
// unique minimal geodesic from x to y. Every generic algorithm in the
// library is written against this concept.
template <typename S>
concept GeodesicSpace = requires(const S& s, const typename S::Point& x,
                                 const typename S::Point& y, double t) {
  typename S::Point;
  { s.distance(x, y) } -> std::convertible_to<double>;
  { s.interpolate(x, y, t) } -> std::convertible_to<typename S::Point>;
};

namespace detail {

// Writes interpolate(x, y, t) into `out` without allocating when the space
// provides an in-place overload; falls back to assignment otherwise.
template <GeodesicSpace S>
void interpolate_into(const S& space, typename S::Point& out, const typename S::Point& x,
                      const typename S::Point& y, double t) {
  if constexpr (requires { space.interpolate_into(out, x, y, t); }) {
    space.interpolate_into(out, x, y, t);
  } else {
    out = space.interpolate(x, y, t);
  }
}

inline void require_unit_interval(double t, const char* who) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw std::invalid_argument(std::string(who) + ": parameter must lie in [0,1], got " +
                                std::to_string(t));
  }
}

inline void require_weights(std::span<const double> weights, std::size_t n, const char* who) {
  if (weights.size() != n) {
    throw std::invalid_argument(std::string(who) + ": weight count " +
                                std::to_string(weights.size()) + " does not match point count " +
                                std::to_string(n));
  }
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) {
      throw std::invalid_argument(std::string(who) + ": weights must be nonnegative");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument(std::string(who) + ": weights must sum to 1, got " +
                                std::to_string(sum));
  }
}

}  // namespace detail

template <GeodesicSpace S>
bool points_equal(const S& space, const typename S::Point& x, const typename S::Point& y,
                  double tol = kPointTol) {
  return space.distance(x, y) <= tol;
}

// Slack of the comparison inequality along the geodesic from x to y:
//   (1-t) d(z,x)^2 + t d(z,y)^2 - t(1-t) d(x,y)^2 - d(z, x (+)_t y)^2.
// Nonnegative (up to rounding) in any space of nonpositive curvature and
// identically zero in flat configurations.
template <GeodesicSpace S>
double npc_gap(const S& space, const typename S::Point& x, const typename S::Point& y,
               const typename S::Point& z, double t) {
  detail::require_unit_interval(t, "npc_gap");
  const double dzx = space.distance(z, x);
  const double dzy = space.distance(z, y);
  const double dxy = space.distance(x, y);
  const double dzg = space.distance(z, space.interpolate(x, y, t));
  return (1.0 - t) * dzx * dzx + t * dzy * dzy - t * (1.0 - t) * dxy * dxy - dzg * dzg;
}

// Slack of the variance inequality at a candidate barycenter m:
//   sum_k w_k d(x_k,z)^2 - sum_k w_k d(x_k,m)^2 - d(m,z)^2.
// Nonnegative (up to rounding) whenever m is the true weighted barycenter.
template <GeodesicSpace S>
double variance_gap(const S& space, std::span<const typename S::Point> points,
                    std::span<const double> weights, const typename S::Point& candidate_mean,
                    const typename S::Point& z) {
  detail::require_weights(weights, points.size(), "variance_gap");
  double to_z = 0.0;
  double to_mean = 0.0;
  for (std::size_t k = 0; k < points.size(); ++k) {
    const double dz = space.distance(points[k], z);
    const double dm = space.distance(points[k], candidate_mean);
    to_z += weights[k] * dz * dz;
    to_mean += weights[k] * dm * dm;
  }
  const double dmz = space.distance(candidate_mean, z);
  return to_z - to_mean - dmz * dmz;
}

// Largest pairwise distance, exact O(n^2) scan.
template <GeodesicSpace S>
double diameter(const S& space, std::span<const typename S::Point> points) {
  double best = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      best = std::max(best, space.distance(points[i], points[j]));
    }
  }
  return best;
}

// 2-approximation of the diameter in O(n): twice the largest distance to the
// first point.
template <GeodesicSpace S>
double diameter_approx(const S& space, std::span<const typename S::Point> points) {
  double best = 0.0;
  for (std::size_t j = 1; j < points.size(); ++j) {
    best = std::max(best, space.distance(points[0], points[j]));
  }
  return 2.0 * best;
}

// Worst observed violation per geometric property over a random sample.
// Violations are scale-normalized: metric terms by 1 + distance, the
// curvature gaps by 1 + d(x,y)^2 + d(z,x)^2, so a report compares against a
// relative tolerance.
struct GeometryReport {
  double symmetry = 0.0;   // |d(x,y) - d(y,x)| / (1 + d(x,y))
  double identity = 0.0;   // d(x,x)
  double triangle = 0.0;   // (d(x,z) - d(x,y) - d(y,z))_+ / (1 + d(x,z))
  double endpoint = 0.0;   // d(interpolate(x,y,0), x), same at t = 1
  double speed = 0.0;      // | d(g(s),g(t)) - |t-s| d(x,y) | / (1 + d(x,y))
  double npc = 0.0;        // (-npc_gap)_+ / (1 + d(x,y)^2 + d(z,x)^2)
  double midpoint = 0.0;   // same gap at t = 1/2 against the midpoint bound

  double worst() const {
    return std::max({symmetry, identity, triangle, endpoint, speed, npc, midpoint});
  }
  bool pass(double tol) const { return worst() <= tol; }
};

// Samples n_cases random triples and exercises every property of the
// geodesic-space contract. `sample` draws one valid point from the space.
template <GeodesicSpace S, class Sampler>
GeometryReport check_metric_axioms(const S& space, Sampler&& sample, std::int64_t n_cases,
                                   SplitMix64& rng) {
  if (n_cases < 1) throw std::invalid_argument("check_metric_axioms: n_cases must be >= 1");
  GeometryReport report;
  for (std::int64_t c = 0; c < n_cases; ++c) {
    const auto x = sample(rng);
    const auto y = sample(rng);
    const auto z = sample(rng);
    const double dxy = space.distance(x, y);
    const double dyx = space.distance(y, x);
    const double dxz = space.distance(x, z);
    const double dyz = space.distance(y, z);
    const double dzx = space.distance(z, x);

    report.symmetry = std::max(report.symmetry, std::abs(dxy - dyx) / (1.0 + dxy));
    report.identity = std::max(report.identity, space.distance(x, x));
    report.triangle =
        std::max(report.triangle, std::max(0.0, dxz - dxy - dyz) / (1.0 + dxz));

    const auto at0 = space.interpolate(x, y, 0.0);
    const auto at1 = space.interpolate(x, y, 1.0);
    report.endpoint = std::max(
        report.endpoint,
        std::max(space.distance(at0, x), space.distance(at1, y)) / (1.0 + dxy));

    const double s = rng.uniform();
    const double t = rng.uniform();
    const auto gs = space.interpolate(x, y, s);
    const auto gt = space.interpolate(x, y, t);
    report.speed = std::max(
        report.speed,
        std::abs(space.distance(gs, gt) - std::abs(t - s) * dxy) / (1.0 + dxy));

    const double curvature_scale = 1.0 + dxy * dxy + dzx * dzx;
    const double u = rng.uniform();
    report.npc = std::max(report.npc,
                          std::max(0.0, -npc_gap(space, x, y, z, u)) / curvature_scale);
    report.midpoint = std::max(
        report.midpoint, std::max(0.0, -npc_gap(space, x, y, z, 0.5)) / curvature_scale);
  }
  return report;
}

}  // namespace hadamard
