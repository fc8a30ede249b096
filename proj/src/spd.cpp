#include "hadamard/spd.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hadamard {
namespace {

void require_square(const Eigen::MatrixXd& a, const char* who) {
  if (a.rows() != a.cols() || a.rows() < 1) {
    throw std::invalid_argument(std::string(who) + ": matrix must be square and nonempty");
  }
}

void require_same_dim(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, const char* who) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument(std::string(who) + ": dimension mismatch " +
                                std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                " vs " + std::to_string(b.rows()) + "x" +
                                std::to_string(b.cols()));
  }
}

// Eigen-decomposition of a symmetric 2x2 [[a00, a01], [a01, a11]].
// Returns l1 >= l2 and the rotation column (c, s) for l1.
void eig2_sym(double a00, double a01, double a11, double& l1, double& l2, double& c, double& s) {
  if (a01 == 0.0) {
    if (a00 >= a11) {
      l1 = a00;
      l2 = a11;
      c = 1.0;
      s = 0.0;
    } else {
      l1 = a11;
      l2 = a00;
      c = 0.0;
      s = 1.0;
    }
    return;
  }
  const double m = 0.5 * (a00 + a11);
  const double h = 0.5 * (a00 - a11);
  const double r = std::hypot(h, a01);
  l1 = m + r;
  l2 = m - r;
  double vx, vy;
  if (h >= 0.0) {
    vx = r + h;  // l1 - a11
    vy = a01;
  } else {
    vx = a01;
    vy = r - h;  // l1 - a00
  }
  const double norm = std::hypot(vx, vy);
  c = vx / norm;
  s = vy / norm;
}

double positive_or_throw(double lambda, const char* who) {
  if (!(lambda > kEpsPd)) {
    throw std::invalid_argument(std::string(who) + ": eigenvalue " + std::to_string(lambda) +
                                " is not positive definite (floor " + std::to_string(kEpsPd) +
                                ")");
  }
  return lambda;
}

// out = A^{1/2} C^t A^{1/2} assembled from the 2x2 pieces; all inputs read
// before `out` is written, so aliasing with the arguments is fine.
void interpolate2(Eigen::MatrixXd& out, const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                  double t) {
  const double a00 = a(0, 0), a01 = a(0, 1), a11 = a(1, 1);
  const double b00 = b(0, 0), b01 = b(0, 1), b11 = b(1, 1);
  if (a01 == 0.0 && b01 == 0.0) {
    // Diagonal pair: the geodesic stays diagonal with entrywise weighted
    // geometric interpolation.
    positive_or_throw(a00, "spd_interpolate");
    positive_or_throw(a11, "spd_interpolate");
    positive_or_throw(b00, "spd_interpolate");
    positive_or_throw(b11, "spd_interpolate");
    out(0, 0) = a00 * std::pow(b00 / a00, t);
    out(1, 1) = a11 * std::pow(b11 / a11, t);
    out(0, 1) = 0.0;
    out(1, 0) = 0.0;
    return;
  }
  const double det_a = a00 * a11 - a01 * a01;
  if (!(det_a > 0.0) || !(a00 > 0.0)) {
    throw std::invalid_argument("spd_interpolate: first argument is not positive definite");
  }
  // S = sqrt(A) in closed form, then C = S^-1 B S^-1.
  const double sd = std::sqrt(det_a);
  const double tau = std::sqrt(a00 + a11 + 2.0 * sd);
  const double s00 = (a00 + sd) / tau, s01 = a01 / tau, s11 = (a11 + sd) / tau;
  const double det_s = s00 * s11 - s01 * s01;
  const double i00 = s11 / det_s, i01 = -s01 / det_s, i11 = s00 / det_s;
  // C = Si * B * Si, symmetric.
  const double m00 = i00 * b00 + i01 * b01;
  const double m01 = i00 * b01 + i01 * b11;
  const double m10 = i01 * b00 + i11 * b01;
  const double m11 = i01 * b01 + i11 * b11;
  const double c00 = m00 * i00 + m01 * i01;
  const double c01 = m00 * i01 + m01 * i11;
  const double c11 = m10 * i01 + m11 * i11;
  double l1, l2, c, s;
  eig2_sym(c00, c01, c11, l1, l2, c, s);
  positive_or_throw(l1, "spd_interpolate");
  positive_or_throw(l2, "spd_interpolate");
  const double p1 = std::pow(l1, t), p2 = std::pow(l2, t);
  // Ct = R diag(p1, p2) R^T.
  const double ct00 = c * c * p1 + s * s * p2;
  const double ct01 = c * s * (p1 - p2);
  const double ct11 = s * s * p1 + c * c * p2;
  // out = S * Ct * S.
  const double n00 = s00 * ct00 + s01 * ct01;
  const double n01 = s00 * ct01 + s01 * ct11;
  const double n10 = s01 * ct00 + s11 * ct01;
  const double n11 = s01 * ct01 + s11 * ct11;
  const double o00 = n00 * s00 + n01 * s01;
  const double o11 = n10 * s01 + n11 * s11;
  const double o01 = 0.5 * ((n00 * s01 + n01 * s11) + (n10 * s00 + n11 * s01));
  out(0, 0) = o00;
  out(0, 1) = o01;
  out(1, 0) = o01;
  out(1, 1) = o11;
}

}  // namespace

void validate_spd(const Eigen::MatrixXd& a, bool require_positive) {
  require_square(a, "validate_spd");
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < a.cols(); ++j) {
      const double scale = std::max(1.0, std::abs(a(i, j)));
      if (std::abs(a(i, j) - a(j, i)) > 1e-12 * scale) {
        throw std::invalid_argument("validate_spd: matrix is not symmetric at (" +
                                    std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }
  if (require_positive) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
      throw NumericError("validate_spd: eigensolver did not converge");
    }
    const double lambda_min = solver.eigenvalues().minCoeff();
    if (!(lambda_min > kEpsPd)) {
      throw std::invalid_argument("validate_spd: smallest eigenvalue " +
                                  std::to_string(lambda_min) + " is not positive");
    }
  }
}

SymEigen sym_eig(const Eigen::MatrixXd& a) {
  validate_spd(a, /*require_positive=*/false);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
  if (solver.info() != Eigen::Success) {
    throw NumericError("sym_eig: eigensolver did not converge");
  }
  SymEigen out;
  out.eigenvalues = solver.eigenvalues().reverse();
  out.eigenvectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

Eigen::MatrixXd sym_matfn(const Eigen::MatrixXd& a, MatFn fn) {
  const SymEigen eig = sym_eig(a);
  Eigen::VectorXd mapped(eig.eigenvalues.size());
  for (Eigen::Index i = 0; i < mapped.size(); ++i) {
    const double lambda = eig.eigenvalues[i];
    switch (fn) {
      case MatFn::Log:
        mapped[i] = std::log(positive_or_throw(lambda, "sym_matfn(log)"));
        break;
      case MatFn::Exp:
        mapped[i] = std::exp(lambda);
        break;
      case MatFn::Sqrt:
        mapped[i] = std::sqrt(positive_or_throw(lambda, "sym_matfn(sqrt)"));
        break;
      case MatFn::InvSqrt:
        mapped[i] = 1.0 / std::sqrt(positive_or_throw(lambda, "sym_matfn(inv_sqrt)"));
        break;
    }
  }
  Eigen::MatrixXd out =
      eig.eigenvectors * mapped.asDiagonal() * eig.eigenvectors.transpose();
  return 0.5 * (out + out.transpose());
}

Eigen::MatrixXd sym_pow(const Eigen::MatrixXd& a, double exponent) {
  const SymEigen eig = sym_eig(a);
  Eigen::VectorXd mapped(eig.eigenvalues.size());
  for (Eigen::Index i = 0; i < mapped.size(); ++i) {
    mapped[i] = std::pow(positive_or_throw(eig.eigenvalues[i], "sym_pow"), exponent);
  }
  Eigen::MatrixXd out =
      eig.eigenvectors * mapped.asDiagonal() * eig.eigenvectors.transpose();
  return 0.5 * (out + out.transpose());
}

double spd_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  require_square(a, "spd_distance");
  require_same_dim(a, b, "spd_distance");
  const Eigen::Index n = a.rows();
  if (n == 1) {
    positive_or_throw(a(0, 0), "spd_distance");
    positive_or_throw(b(0, 0), "spd_distance");
    return std::abs(std::log(a(0, 0) / b(0, 0)));
  }
  if (n == 2) {
    const double a00 = a(0, 0), a01 = a(0, 1), a11 = a(1, 1);
    const double b00 = b(0, 0), b01 = b(0, 1), b11 = b(1, 1);
    if (a01 == 0.0 && b01 == 0.0) {
      positive_or_throw(a00, "spd_distance");
      positive_or_throw(a11, "spd_distance");
      positive_or_throw(b00, "spd_distance");
      positive_or_throw(b11, "spd_distance");
      return std::hypot(std::log(a00 / b00), std::log(a11 / b11));
    }
    // Generalized eigenvalues of (A, B) solve det(A - lambda B) = 0.
    const double alpha = b00 * b11 - b01 * b01;
    const double gamma = a00 * a11 - a01 * a01;
    const double beta = -(a00 * b11 + a11 * b00 - 2.0 * a01 * b01);
    if (!(alpha > 0.0) || !(gamma > 0.0)) {
      throw std::invalid_argument("spd_distance: arguments must be positive definite");
    }
    const double disc = std::max(0.0, beta * beta - 4.0 * alpha * gamma);
    const double q = -0.5 * (beta - std::sqrt(disc));  // beta < 0 for pd pairs
    const double l1 = q / alpha;
    const double l2 = gamma / q;
    positive_or_throw(l1, "spd_distance");
    positive_or_throw(l2, "spd_distance");
    return std::hypot(std::log(l1), std::log(l2));
  }
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, b,
                                                                   Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericError("spd_distance: generalized eigensolver did not converge");
  }
  double sum = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double lambda = positive_or_throw(solver.eigenvalues()[i], "spd_distance");
    const double l = std::log(lambda);
    sum += l * l;
  }
  return std::sqrt(sum);
}

Eigen::MatrixXd spd_interpolate(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double t) {
  Eigen::MatrixXd out(a.rows(), a.cols());
  SpdSpace(static_cast<int>(a.rows())).interpolate_into(out, a, b, t);
  return out;
}

bool spd_commute(std::span<const Eigen::MatrixXd> mats, double tol) {
  for (std::size_t i = 0; i < mats.size(); ++i) {
    for (std::size_t j = i + 1; j < mats.size(); ++j) {
      const double scale = mats[i].norm() * mats[j].norm();
      if ((mats[i] * mats[j] - mats[j] * mats[i]).norm() > tol * scale) {
        return false;
      }
    }
  }
  return true;
}

Eigen::MatrixXd commuting_barycenter(std::span<const Eigen::MatrixXd> mats, double tol) {
  const std::vector<double> weights(mats.size(), 1.0 / static_cast<double>(mats.size()));
  return commuting_barycenter(mats, weights, tol);
}

Eigen::MatrixXd commuting_barycenter(std::span<const Eigen::MatrixXd> mats,
                                     std::span<const double> weights, double tol) {
  if (mats.empty()) {
    throw std::invalid_argument("commuting_barycenter: empty input");
  }
  detail::require_weights(weights, mats.size(), "commuting_barycenter");
  if (!spd_commute(mats, tol)) {
    throw std::invalid_argument("commuting_barycenter: matrices do not pairwise commute");
  }
  Eigen::MatrixXd mean_log = Eigen::MatrixXd::Zero(mats[0].rows(), mats[0].cols());
  for (std::size_t k = 0; k < mats.size(); ++k) {
    require_same_dim(mats[0], mats[k], "commuting_barycenter");
    mean_log += weights[k] * sym_log(mats[k]);
  }
  return sym_exp(mean_log);
}

double spectral_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  require_square(a, "spectral_distance");
  require_same_dim(a, b, "spectral_distance");
  const Eigen::Index n = a.rows();
  if (n == 1) return std::abs(a(0, 0) - b(0, 0));
  if (n == 2) {
    const double d00 = a(0, 0) - b(0, 0);
    const double d01 = a(0, 1) - b(0, 1);
    const double d11 = a(1, 1) - b(1, 1);
    const double m = 0.5 * (d00 + d11);
    const double r = std::hypot(0.5 * (d00 - d11), d01);
    return std::abs(m) + r;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a - b, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericError("spectral_distance: eigensolver did not converge");
  }
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

Eigen::MatrixXd random_spd(int dim, double condition_cap, SplitMix64& rng) {
  if (dim < 1) throw std::invalid_argument("random_spd: dim must be >= 1");
  if (!(condition_cap >= 1.0)) {
    throw std::invalid_argument("random_spd: condition_cap must be >= 1");
  }
  const double half_log_cap = 0.5 * std::log(condition_cap);
  Eigen::VectorXd lambdas(dim);
  for (int i = 0; i < dim; ++i) {
    lambdas[i] = std::exp(rng.uniform(-1.0, 1.0) * half_log_cap);
  }
  if (dim == 1) {
    Eigen::MatrixXd out(1, 1);
    out(0, 0) = lambdas[0];
    return out;
  }
  Eigen::MatrixXd g(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) g(i, j) = rng.gaussian();
  }
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  Eigen::MatrixXd out = q * lambdas.asDiagonal() * q.transpose();
  return 0.5 * (out + out.transpose());
}

SpdSpace::SpdSpace(int dim) : dim_(dim) {
  if (dim < 1) throw std::invalid_argument("SpdSpace: dimension must be >= 1");
}

double SpdSpace::distance(const Point& a, const Point& b) const {
  if (a.rows() != dim_ || b.rows() != dim_) {
    throw std::invalid_argument("SpdSpace::distance: point dimension mismatch");
  }
  return spd_distance(a, b);
}

Eigen::MatrixXd SpdSpace::interpolate(const Point& a, const Point& b, double t) const {
  Point out(dim_, dim_);
  interpolate_into(out, a, b, t);
  return out;
}

void SpdSpace::interpolate_into(Point& out, const Point& a, const Point& b, double t) const {
  detail::require_unit_interval(t, "SpdSpace::interpolate");
  if (a.rows() != dim_ || a.cols() != dim_ || b.rows() != dim_ || b.cols() != dim_) {
    throw std::invalid_argument("SpdSpace::interpolate: point dimension mismatch");
  }
  out.resize(dim_, dim_);
  if (t == 0.0) {
    out = a;
    return;
  }
  if (t == 1.0) {
    out = b;
    return;
  }
  if (dim_ == 1) {
    const double va = a(0, 0), vb = b(0, 0);
    positive_or_throw(va, "spd_interpolate");
    positive_or_throw(vb, "spd_interpolate");
    out(0, 0) = va * std::pow(vb / va, t);
    return;
  }
  if (dim_ == 2) {
    interpolate2(out, a, b, t);
    return;
  }
  const Eigen::MatrixXd sq = sym_sqrt(a);
  const Eigen::MatrixXd isq = sym_inv_sqrt(a);
  Eigen::MatrixXd middle = isq * b * isq;
  middle = 0.5 * (middle + middle.transpose());
  Eigen::MatrixXd result = sq * sym_pow(middle, t) * sq;
  out = 0.5 * (result + result.transpose());
}

}  // namespace hadamard
