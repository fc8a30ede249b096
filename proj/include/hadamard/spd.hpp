#pragma once

#include <Eigen/Core>
#include <span>

#include "hadamard/geometry.hpp"
#include "hadamard/rng.hpp"

namespace hadamard {

// Absolute floor on the smallest eigenvalue accepted as positive definite.
inline constexpr double kEpsPd = 1e-12;
// Relative tolerance of the pairwise commutation check.
inline constexpr double kTolCommute = 1e-8;

// Orthogonal diagonalization A = Q diag(values) Q^T, eigenvalues descending.
struct SymEigen {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;
};

// Throws if `a` is not square/symmetric (entrywise 1e-12 relative) or, when
// `require_positive`, if its smallest eigenvalue is <= kEpsPd.
void validate_spd(const Eigen::MatrixXd& a, bool require_positive = true);

SymEigen sym_eig(const Eigen::MatrixXd& a);

enum class MatFn { Log, Exp, Sqrt, InvSqrt };

// Spectral calculus Q f(diag) Q^T. Log/Sqrt/InvSqrt require positive
// eigenvalues and report the offending one otherwise.
Eigen::MatrixXd sym_matfn(const Eigen::MatrixXd& a, MatFn fn);
Eigen::MatrixXd sym_pow(const Eigen::MatrixXd& a, double exponent);

inline Eigen::MatrixXd sym_log(const Eigen::MatrixXd& a) { return sym_matfn(a, MatFn::Log); }
inline Eigen::MatrixXd sym_exp(const Eigen::MatrixXd& a) { return sym_matfn(a, MatFn::Exp); }
inline Eigen::MatrixXd sym_sqrt(const Eigen::MatrixXd& a) { return sym_matfn(a, MatFn::Sqrt); }
inline Eigen::MatrixXd sym_inv_sqrt(const Eigen::MatrixXd& a) {
  return sym_matfn(a, MatFn::InvSqrt);
}

// Affine-invariant distance || log(B^{-1/2} A B^{-1/2}) ||_F.
double spd_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

// Geodesic point A^{1/2} (A^{-1/2} B A^{-1/2})^t A^{1/2}, t in [0, 1].
Eigen::MatrixXd spd_interpolate(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double t);

// True when all pairs commute within tol * ||A_i||_F ||A_j||_F.
bool spd_commute(std::span<const Eigen::MatrixXd> mats, double tol = kTolCommute);

// Barycenter (A_1 ... A_n)^{1/n} of a pairwise commuting family, evaluated
// as exp of the mean log for stability. Non-commuting input is rejected.
Eigen::MatrixXd commuting_barycenter(std::span<const Eigen::MatrixXd> mats,
                                     double tol = kTolCommute);
// Weighted form exp(sum_k w_k log A_k) under the same commutation guard.
Eigen::MatrixXd commuting_barycenter(std::span<const Eigen::MatrixXd> mats,
                                     std::span<const double> weights, double tol = kTolCommute);

// Largest singular value of A - B (both symmetric).
double spectral_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

// Random matrix with eigenvalues log-uniform in [cap^-1/2, cap^1/2] under a
// random orthogonal conjugation; condition number <= cap by construction.
Eigen::MatrixXd random_spd(int dim, double condition_cap, SplitMix64& rng);

// The manifold of symmetric positive-definite dim x dim matrices with the
// affine-invariant metric.
class SpdSpace {
 public:
  using Point = Eigen::MatrixXd;

  explicit SpdSpace(int dim);

  int dim() const noexcept { return dim_; }

  double distance(const Point& a, const Point& b) const;
  Point interpolate(const Point& a, const Point& b, double t) const;
  void interpolate_into(Point& out, const Point& a, const Point& b, double t) const;

  Point random_point(SplitMix64& rng, double condition_cap = 100.0) const {
    return random_spd(dim_, condition_cap, rng);
  }

 private:
  int dim_;
};

}  // namespace hadamard
