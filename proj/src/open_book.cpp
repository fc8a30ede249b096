#include "hadamard/open_book.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace hadamard {

BookSpace::BookSpace(int sheets, int spine_dim) : sheets_(sheets), spine_dim_(spine_dim) {
  if (sheets < 2) throw std::invalid_argument("BookSpace: need at least 2 sheets");
  if (spine_dim < 0) throw std::invalid_argument("BookSpace: spine dimension must be >= 0");
}

void BookSpace::check_point(const Point& p, const char* who) const {
  if (p.sheet < 1 || p.sheet > sheets_) {
    throw std::invalid_argument(std::string(who) + ": sheet " + std::to_string(p.sheet) +
                                " outside 1.." + std::to_string(sheets_));
  }
  if (p.spine.size() != spine_dim_) {
    throw std::invalid_argument(std::string(who) + ": spine coordinate length " +
                                std::to_string(p.spine.size()) + " != " +
                                std::to_string(spine_dim_));
  }
}

BookPoint BookSpace::canonicalize(Point p) const {
  check_point(p, "BookSpace::canonicalize");
  if (p.t < -kPointTol) {
    throw std::invalid_argument("BookSpace::canonicalize: negative sheet coordinate " +
                                std::to_string(p.t));
  }
  if (p.t <= kPointTol) {
    p.t = 0.0;
    p.sheet = 1;
  }
  return p;
}

BookPoint BookSpace::make_point(int sheet, double t, Eigen::VectorXd spine) const {
  return canonicalize(BookPoint{sheet, t, std::move(spine)});
}

double BookSpace::distance(const Point& p, const Point& q) const {
  check_point(p, "BookSpace::distance");
  check_point(q, "BookSpace::distance");
  const double dt = (p.sheet == q.sheet || p.t == 0.0 || q.t == 0.0) ? p.t - q.t : p.t + q.t;
  return std::sqrt(dt * dt + (p.spine - q.spine).squaredNorm());
}

BookPoint BookSpace::interpolate(const Point& p, const Point& q, double u) const {
  Point out;
  interpolate_into(out, p, q, u);
  return out;
}

void BookSpace::interpolate_into(Point& out, const Point& p, const Point& q, double u) const {
  detail::require_unit_interval(u, "BookSpace::interpolate");
  check_point(p, "BookSpace::interpolate");
  check_point(q, "BookSpace::interpolate");
  // `out` may alias either argument; read all scalars up front.
  const double tp = p.t, tq_raw = q.t;
  const int sheet_p = p.sheet, sheet_q = q.sheet;
  const bool unfold = sheet_p != sheet_q && tp != 0.0 && tq_raw != 0.0;
  const double tq = unfold ? -tq_raw : tq_raw;
  const double tu = (1.0 - u) * tp + u * tq;
  out.spine = (1.0 - u) * p.spine + u * q.spine;
  if (tu >= 0.0) {
    out.sheet = (tp != 0.0) ? sheet_p : sheet_q;
    out.t = tu;
  } else {
    out.sheet = sheet_q;
    out.t = -tu;
  }
  if (out.t <= kPointTol) {
    out.t = 0.0;
    out.sheet = 1;
  }
}

BookPoint BookSpace::random_point(SplitMix64& rng) const {
  BookPoint p;
  p.sheet = static_cast<int>(rng.below(static_cast<std::uint64_t>(sheets_))) + 1;
  p.t = rng.uniform();
  p.spine.resize(spine_dim_);
  for (int i = 0; i < spine_dim_; ++i) p.spine[i] = rng.uniform(-1.0, 1.0);
  return canonicalize(std::move(p));
}

BookPoint book_frechet(const BookSpace& space, std::span<const BookPoint> points,
                       std::span<const double> weights) {
  if (points.empty()) throw std::invalid_argument("book_frechet: empty input");
  detail::require_weights(weights, points.size(), "book_frechet");

  Eigen::VectorXd spine_mean = Eigen::VectorXd::Zero(space.spine_dim());
  for (std::size_t i = 0; i < points.size(); ++i) {
    spine_mean += weights[i] * points[i].spine;
  }

  // Folded first-coordinate mean per candidate sheet; at most one is
  // positive, and that sheet carries the mean.
  for (int sheet = 1; sheet <= space.sheets(); ++sheet) {
    double folded = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const double signed_t = (points[i].sheet == sheet) ? points[i].t : -points[i].t;
      folded += weights[i] * signed_t;
    }
    if (folded > 0.0) {
      return space.make_point(sheet, folded, spine_mean);
    }
  }
  return space.make_point(1, 0.0, spine_mean);
}

double book_frechet_objective(const BookSpace& space, std::span<const BookPoint> points,
                              std::span<const double> weights, const BookPoint& z) {
  double total = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double d = space.distance(points[i], z);
    total += weights[i] * d * d;
  }
  return total;
}

}  // namespace hadamard
