#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "hadamard/spd.hpp"
#include "oracles.hpp"

using namespace hadamard;

namespace {

Eigen::MatrixXd diag2(double a, double b) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

}  // namespace

TEST_CASE("sym_eig on the identity and diagonal input") {
  const auto ident = sym_eig(Eigen::MatrixXd::Identity(3, 3));
  for (int i = 0; i < 3; ++i) CHECK(ident.eigenvalues[i] == doctest::Approx(1.0));

  const auto d = sym_eig(diag2(0.1, 10.0));
  CHECK(d.eigenvalues[0] == doctest::Approx(10.0));
  CHECK(d.eigenvalues[1] == doctest::Approx(0.1));
  CHECK(std::abs(d.eigenvectors(1, 0)) == doctest::Approx(1.0));  // axis vectors
  CHECK(std::abs(d.eigenvectors(0, 1)) == doctest::Approx(1.0));
}

TEST_CASE("sym_eig reconstructs random symmetric matrices") {
  SplitMix64 rng(41);
  for (int rep = 0; rep < 50; ++rep) {
    const int dim = 2 + static_cast<int>(rng.below(6));
    Eigen::MatrixXd a(dim, dim);
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j <= i; ++j) {
        a(i, j) = rng.uniform(-2.0, 2.0);
        a(j, i) = a(i, j);
      }
    }
    const SymEigen eig = sym_eig(a);
    const Eigen::MatrixXd rebuilt =
        eig.eigenvectors * eig.eigenvalues.asDiagonal() * eig.eigenvectors.transpose();
    CHECK((rebuilt - a).norm() <= 1e-10 * std::max(1.0, a.norm()));
    CHECK((eig.eigenvectors.transpose() * eig.eigenvectors -
           Eigen::MatrixXd::Identity(dim, dim))
              .norm() <= 1e-10);
    for (int i = 0; i + 1 < dim; ++i) CHECK(eig.eigenvalues[i] >= eig.eigenvalues[i + 1]);
  }
}

TEST_CASE("sym_eig rejects asymmetric input") {
  Eigen::MatrixXd a(2, 2);
  a << 1.0, 0.5, -0.5, 1.0;
  CHECK_THROWS_AS(sym_eig(a), std::invalid_argument);
}

TEST_CASE("matrix functions through the spectral calculus") {
  CHECK(sym_log(Eigen::MatrixXd::Identity(2, 2)).norm() == doctest::Approx(0.0));
  const Eigen::MatrixXd root = sym_sqrt(diag2(4.0, 9.0));
  CHECK(root(0, 0) == doctest::Approx(2.0));
  CHECK(root(1, 1) == doctest::Approx(3.0));
  Eigen::MatrixXd two(1, 1);
  two << 2.0;
  CHECK(sym_pow(two, 0.5)(0, 0) == doctest::Approx(std::sqrt(2.0)));
  const Eigen::MatrixXd inv_root = sym_inv_sqrt(diag2(4.0, 16.0));
  CHECK(inv_root(0, 0) == doctest::Approx(0.5));
  CHECK(inv_root(1, 1) == doctest::Approx(0.25));
}

TEST_CASE("matrix log names the offending eigenvalue") {
  try {
    sym_log(diag2(1.0, -2.0));
    FAIL("expected a domain error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("-2") != std::string::npos);
  }
}

TEST_CASE("distance examples") {
  CHECK(spd_distance(Eigen::MatrixXd::Identity(2, 2), Eigen::MatrixXd::Identity(2, 2)) ==
        doctest::Approx(0.0));
  CHECK(spd_distance(diag2(1.0, 1.0), diag2(std::exp(2.0), 1.0)) == doctest::Approx(2.0));
  Eigen::MatrixXd a(1, 1), b(1, 1);
  a << 2.0;
  b << 8.0;
  CHECK(spd_distance(a, b) == doctest::Approx(std::log(4.0)));
  CHECK_THROWS_AS(spd_distance(a, diag2(1, 1)), std::invalid_argument);
}

TEST_CASE("distance is symmetric and congruence invariant") {
  SplitMix64 rng(43);
  for (int rep = 0; rep < 100; ++rep) {
    const int dim = 2 + static_cast<int>(rng.below(3));
    const Eigen::MatrixXd a = random_spd(dim, 100.0, rng);
    const Eigen::MatrixXd b = random_spd(dim, 100.0, rng);
    const double d = spd_distance(a, b);
    CHECK(std::abs(d - spd_distance(b, a)) <= 1e-8 * (1.0 + d));

    Eigen::MatrixXd m(dim, dim);
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) m(i, j) = rng.uniform(-1.0, 1.0);
    }
    m += 3.0 * Eigen::MatrixXd::Identity(dim, dim);  // keep it invertible
    const double dc = spd_distance(m * a * m.transpose(), m * b * m.transpose());
    CHECK(std::abs(dc - d) <= 1e-6 * (1.0 + d));
  }
}

TEST_CASE("spectral norm is below Frobenius; intrinsic dominates for spectra in (0,1]") {
  SplitMix64 rng(47);
  for (int rep = 0; rep < 100; ++rep) {
    const int dim = 2 + static_cast<int>(rng.below(3));
    const Eigen::MatrixXd a = random_spd(dim, 50.0, rng);
    const Eigen::MatrixXd b = random_spd(dim, 50.0, rng);
    CHECK(spectral_distance(a, b) <= (a - b).norm() + 1e-12);

    // The second comparison needs eigenvalues at most 1 (the logarithm is
    // expanding there); scale both matrices below the identity.
    const double shrink =
        0.9 / std::max(sym_eig(a).eigenvalues[0], sym_eig(b).eigenvalues[0]);
    const Eigen::MatrixXd as = shrink * a, bs = shrink * b;
    const double dp = spd_distance(as, bs);
    CHECK((as - bs).norm() <= dp + 1e-8 * (1.0 + dp));
    CHECK(spectral_distance(as, bs) <= (as - bs).norm() + 1e-12);
  }
}

TEST_CASE("spectral distance examples and power-iteration oracle") {
  CHECK(spectral_distance(diag2(1, 1), diag2(1, 1)) == doctest::Approx(0.0));
  CHECK(spectral_distance(diag2(1, 1), diag2(3, 1)) == doctest::Approx(2.0));
  SplitMix64 rng(53);
  for (int rep = 0; rep < 30; ++rep) {
    const int dim = 2 + static_cast<int>(rng.below(4));
    const Eigen::MatrixXd a = random_spd(dim, 30.0, rng);
    const Eigen::MatrixXd b = random_spd(dim, 30.0, rng);
    CHECK(spectral_distance(a, b) ==
          doctest::Approx(oracles::power_iteration_norm(a - b)).epsilon(1e-8));
  }
}

TEST_CASE("geodesic interpolation examples") {
  Eigen::MatrixXd one(1, 1), four(1, 1);
  one << 1.0;
  four << 4.0;
  CHECK(spd_interpolate(one, four, 0.5)(0, 0) == doctest::Approx(2.0));

  SplitMix64 rng(59);
  const Eigen::MatrixXd a = random_spd(3, 20.0, rng);
  CHECK((spd_interpolate(a, a, 0.37) - a).norm() <= 1e-10 * a.norm());
  const Eigen::MatrixXd b = random_spd(3, 20.0, rng);
  CHECK((spd_interpolate(a, b, 0.0) - a).norm() == doctest::Approx(0.0));
  CHECK((spd_interpolate(a, b, 1.0) - b).norm() == doctest::Approx(0.0));
}

TEST_CASE("commuting barycenter closed form") {
  const std::vector<Eigen::MatrixXd> pair{diag2(1.0, 4.0), diag2(4.0, 1.0)};
  const Eigen::MatrixXd mean = commuting_barycenter(pair);
  CHECK(mean(0, 0) == doctest::Approx(2.0));
  CHECK(mean(1, 1) == doctest::Approx(2.0));
  CHECK(mean(0, 1) == doctest::Approx(0.0));

  const std::vector<Eigen::MatrixXd> single{diag2(0.3, 7.0)};
  CHECK((commuting_barycenter(single) - single[0]).norm() <= 1e-12);

  const std::vector<Eigen::MatrixXd> copies(5, diag2(0.1, 10.0));
  CHECK((commuting_barycenter(copies) - copies[0]).norm() <= 1e-12);
}

TEST_CASE("commuting barycenter rejects non-commuting families") {
  Eigen::MatrixXd rot(2, 2);
  rot << 2.0, 0.9, 0.9, 1.0;
  const std::vector<Eigen::MatrixXd> mats{diag2(1.0, 4.0), rot};
  CHECK_THROWS_AS(commuting_barycenter(mats), std::invalid_argument);
}

TEST_CASE("random_spd respects the condition cap and the rng contract") {
  SplitMix64 rng_a(71), rng_b(71);
  const Eigen::MatrixXd a = random_spd(4, 100.0, rng_a);
  const Eigen::MatrixXd b = random_spd(4, 100.0, rng_b);
  CHECK((a - b).norm() == doctest::Approx(0.0));

  const Eigen::MatrixXd eye = random_spd(3, 1.0, rng_a);
  CHECK((eye - Eigen::MatrixXd::Identity(3, 3)).norm() <= 1e-12);

  for (int rep = 0; rep < 30; ++rep) {
    const Eigen::MatrixXd m = random_spd(3, 100.0, rng_a);
    const auto eig = sym_eig(m);
    CHECK(eig.eigenvalues[0] / eig.eigenvalues[2] <= 100.0 * (1.0 + 1e-9));
  }
  CHECK_THROWS_AS(random_spd(2, 0.5, rng_a), std::invalid_argument);
}

TEST_CASE("validate_spd flags asymmetry and indefiniteness") {
  CHECK_NOTHROW(validate_spd(diag2(0.5, 3.0)));
  CHECK_THROWS_AS(validate_spd(diag2(0.5, -3.0)), std::invalid_argument);
  Eigen::MatrixXd skew(2, 2);
  skew << 1.0, 0.2, -0.2, 1.0;
  CHECK_THROWS_AS(validate_spd(skew), std::invalid_argument);
}
