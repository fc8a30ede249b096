#pragma once

#include <Eigen/Core>
#include <span>

#include "hadamard/geometry.hpp"
#include "hadamard/rng.hpp"

namespace hadamard {

// Point of an open book: k half-spaces [0, inf) x R^d glued along the
// common spine {t = 0}. Spine points carry sheet label 1 in canonical form
// so that point equality is well defined.
struct BookPoint {
  int sheet = 1;        // 1-based sheet index
  double t = 0.0;       // distance-to-spine coordinate, >= 0
  Eigen::VectorXd spine;  // coordinates along the spine, length d
};

class BookSpace {
 public:
  using Point = BookPoint;

  BookSpace(int sheets, int spine_dim);

  int sheets() const noexcept { return sheets_; }
  int spine_dim() const noexcept { return spine_dim_; }

  // Validates ranges, clamps |t| <= kPointTol to the spine and normalizes
  // the sheet label of spine points to 1. t < -kPointTol is rejected.
  Point canonicalize(Point p) const;

  Point make_point(int sheet, double t, Eigen::VectorXd spine) const;

  // Same sheet: Euclidean. Different sheets: the geodesic crosses the spine,
  // which is the Euclidean distance in the unfolded (reflected) picture.
  double distance(const Point& p, const Point& q) const;

  Point interpolate(const Point& p, const Point& q, double u) const;
  void interpolate_into(Point& out, const Point& p, const Point& q, double u) const;

  // Random sheet, t uniform in [0, 1], spine coordinates uniform in [-1, 1].
  Point random_point(SplitMix64& rng) const;

 private:
  void check_point(const Point& p, const char* who) const;

  int sheets_;
  int spine_dim_;
};

// Exact weighted Frechet mean by folding: for each candidate sheet j the
// points on j keep +t and all others fold to -t; the candidate is the
// Euclidean weighted mean of the folded coordinates. At most one sheet gives
// a positive first coordinate, otherwise the mean lies on the spine.
BookPoint book_frechet(const BookSpace& space, std::span<const BookPoint> points,
                       std::span<const double> weights);

// Weighted sum of squared distances from z, the functional book_frechet
// minimizes.
double book_frechet_objective(const BookSpace& space, std::span<const BookPoint> points,
                              std::span<const double> weights, const BookPoint& z);

}  // namespace hadamard
