#pragma once

#include <Eigen/Core>
#include <stdexcept>
#include <string>

#include "hadamard/geometry.hpp"
#include "hadamard/rng.hpp"

namespace hadamard {

// Flat reference space. Every mean implemented by this library collapses to
// the arithmetic mean here, which makes the space the main test oracle.
class EuclideanSpace {
 public:
  using Point = Eigen::VectorXd;

  explicit EuclideanSpace(int dim) : dim_(dim) {
    if (dim < 1) throw std::invalid_argument("EuclideanSpace: dimension must be >= 1");
  }

  int dim() const noexcept { return dim_; }

  double distance(const Point& x, const Point& y) const {
    check_dim(x);
    check_dim(y);
    return (x - y).norm();
  }

  Point interpolate(const Point& x, const Point& y, double t) const {
    Point out(dim_);
    interpolate_into(out, x, y, t);
    return out;
  }

  void interpolate_into(Point& out, const Point& x, const Point& y, double t) const {
    check_dim(x);
    check_dim(y);
    detail::require_unit_interval(t, "EuclideanSpace::interpolate");
    out = (1.0 - t) * x + t * y;
  }

  // Uniform draw from [-1, 1]^dim.
  Point random_point(SplitMix64& rng) const {
    Point p(dim_);
    for (int i = 0; i < dim_; ++i) p[i] = rng.uniform(-1.0, 1.0);
    return p;
  }

 private:
  void check_dim(const Point& p) const {
    if (p.size() != dim_) {
      throw std::invalid_argument("EuclideanSpace: point has dimension " +
                                  std::to_string(p.size()) + ", space has " +
                                  std::to_string(dim_));
    }
  }

  int dim_;
};

}  // namespace hadamard
