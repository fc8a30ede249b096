#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Core>
#include <cmath>
#include <vector>

#include "hadamard/euclidean.hpp"
#include "hadamard/frechet.hpp"
#include "hadamard/open_book.hpp"
#include "hadamard/spd.hpp"

using namespace hadamard;

namespace {

Eigen::VectorXd vec1(double x) { return Eigen::VectorXd::Constant(1, x); }

Eigen::MatrixXd diag2(double a, double b) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

}  // namespace

TEST_CASE("cyclic scheme basics") {
  const EuclideanSpace space(1);
  const std::vector<Eigen::VectorXd> one{vec1(4.0)};
  const auto single = lim_palfia(space, std::span(one), 25);
  CHECK(single.estimate[0] == doctest::Approx(4.0));
  CHECK(single.error_certificate() == doctest::Approx(0.0));
  CHECK(single.diameter == doctest::Approx(0.0));

  const std::vector<Eigen::VectorXd> pts{vec1(0.0), vec1(1.0), vec1(5.0)};
  CHECK_THROWS_AS(lim_palfia(space, std::span(pts), 2), std::invalid_argument);
  const std::vector<Eigen::VectorXd> none;
  CHECK_THROWS_AS(lim_palfia(space, std::span(none), 5), std::invalid_argument);
}

TEST_CASE("certificate bounds the flat-space error for every budget") {
  const EuclideanSpace space(3);
  SplitMix64 rng(307);
  for (int rep = 0; rep < 50; ++rep) {
    const int n = 2 + static_cast<int>(rng.below(9));
    std::vector<Eigen::VectorXd> pts;
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(3);
    for (int i = 0; i < n; ++i) {
      pts.push_back(space.random_point(rng));
      mean += pts.back();
    }
    mean /= n;
    for (const std::int64_t factor : {1, 3, 10, 40}) {
      const auto lp = lim_palfia(space, std::span(pts), factor * n);
      CHECK((lp.estimate - mean).norm() <= lp.error_certificate() + 1e-9);
    }
  }
}

TEST_CASE("weighted scheme targets the weighted arithmetic mean in flat space") {
  const EuclideanSpace space(2);
  SplitMix64 rng(309);
  for (int rep = 0; rep < 30; ++rep) {
    const int n = 2 + static_cast<int>(rng.below(6));
    std::vector<Eigen::VectorXd> pts;
    std::vector<double> w;
    double wsum = 0.0;
    for (int i = 0; i < n; ++i) {
      pts.push_back(space.random_point(rng));
      w.push_back(0.1 + rng.uniform());
      wsum += w.back();
    }
    Eigen::VectorXd target = Eigen::VectorXd::Zero(2);
    for (int i = 0; i < n; ++i) {
      w[i] /= wsum;
      target += w[i] * pts[i];
    }
    const auto lp = lim_palfia(space, std::span(pts), w, 50 * n);
    CHECK((lp.estimate - target).norm() <= lp.error_certificate() + 1e-9);
  }
}

TEST_CASE("certificate bounds the commuting-matrix error") {
  const SpdSpace space(2);
  SplitMix64 rng(311);
  for (int rep = 0; rep < 50; ++rep) {
    const int n = 2 + static_cast<int>(rng.below(6));
    std::vector<Eigen::MatrixXd> pts;
    for (int i = 0; i < n; ++i) {
      pts.push_back(diag2(std::exp(rng.uniform(-1, 1)), std::exp(rng.uniform(-1, 1))));
    }
    const Eigen::MatrixXd closed = commuting_barycenter(pts);
    const auto lp = lim_palfia(space, std::span(pts), static_cast<std::int64_t>(n) * n);
    CHECK(space.distance(lp.estimate, closed) <= lp.error_certificate() + 1e-9);
  }
}

TEST_CASE("worked pair: diag(1) and diag(4)") {
  const SpdSpace space(1);
  Eigen::MatrixXd one(1, 1), four(1, 1);
  one << 1.0;
  four << 4.0;
  const std::vector<Eigen::MatrixXd> pts{one, four};
  const auto lp = lim_palfia(space, std::span(pts), 4);  // k = n^2 with n = 2
  const double delta = spd_distance(one, four);
  CHECK(lp.error_certificate() == doctest::Approx(2.0 * delta * std::sqrt(0.5)));
  Eigen::MatrixXd geo_mean(1, 1);
  geo_mean << 2.0;
  CHECK(space.distance(lp.estimate, geo_mean) <= lp.error_certificate());
}

TEST_CASE("doubling the budget never worsens the certificate") {
  const EuclideanSpace space(2);
  SplitMix64 rng(313);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 2 + static_cast<int>(rng.below(6));
    std::vector<Eigen::VectorXd> pts;
    for (int i = 0; i < n; ++i) pts.push_back(space.random_point(rng));
    double prev = 1e300;
    for (std::int64_t k = n; k <= 64 * n; k *= 2) {
      const double cert = lim_palfia(space, std::span(pts), k).error_certificate();
      CHECK(cert <= prev + 1e-15);
      prev = cert;
    }
  }
}

TEST_CASE("measured error vs oracle is non-increasing in the budget on average") {
  const EuclideanSpace space(2);
  SplitMix64 rng(317);
  int improved = 0, total = 0;
  for (int rep = 0; rep < 50; ++rep) {
    const int n = 3 + static_cast<int>(rng.below(5));
    std::vector<Eigen::VectorXd> pts;
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(2);
    for (int i = 0; i < n; ++i) {
      pts.push_back(space.random_point(rng));
      mean += pts.back();
    }
    mean /= n;
    const double coarse = (lim_palfia(space, std::span(pts), 4 * n).estimate - mean).norm();
    const double fine = (lim_palfia(space, std::span(pts), 64 * n).estimate - mean).norm();
    ++total;
    if (fine <= coarse + 1e-12) ++improved;
  }
  CHECK(improved >= (total * 9) / 10);
}

TEST_CASE("variance slack of the approximate barycenter") {
  const SpdSpace space(2);
  SplitMix64 rng(331);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 2 + static_cast<int>(rng.below(5));
    std::vector<Eigen::MatrixXd> pts;
    for (int i = 0; i < n; ++i) {
      pts.push_back(diag2(std::exp(rng.uniform(-1, 1)), std::exp(rng.uniform(-1, 1))));
    }
    const std::vector<double> w(pts.size(), 1.0 / pts.size());
    const auto lp = lim_palfia(space, std::span(pts), 30 * n);
    const double cert = lp.error_certificate();
    double worst = 0.0;
    for (const auto& p : pts) worst = std::max(worst, space.distance(p, lp.estimate));
    const double slack = 2.0 * cert * (cert + worst);
    for (int zrep = 0; zrep < 5; ++zrep) {
      const Eigen::MatrixXd z = space.random_point(rng);
      CHECK(variance_gap(space, std::span(pts), w, lp.estimate, z) >= -slack - 1e-9);
    }
  }
}

TEST_CASE("closed-form barycenters per space") {
  const EuclideanSpace euclid(1);
  const std::vector<Eigen::VectorXd> epts{vec1(0.0), vec1(4.0)};
  const std::vector<double> half{0.5, 0.5};
  CHECK(frechet_oracle(euclid, std::span(epts), half)[0] == doctest::Approx(2.0));

  const SpdSpace spd(2);
  const std::vector<Eigen::MatrixXd> mpts{diag2(1, 4), diag2(4, 1)};
  const Eigen::MatrixXd m = frechet_oracle(spd, std::span(mpts), half);
  CHECK(m(0, 0) == doctest::Approx(2.0));
  CHECK(m(1, 1) == doctest::Approx(2.0));

  Eigen::MatrixXd rotated(2, 2);
  rotated << 2.0, 0.9, 0.9, 1.0;
  const std::vector<Eigen::MatrixXd> bad{diag2(1, 4), rotated};
  CHECK_THROWS_AS(frechet_oracle(spd, std::span(bad), half), std::invalid_argument);

  const BookSpace book(3, 1);
  std::vector<BookPoint> bpts;
  for (int sheet = 1; sheet <= 3; ++sheet) {
    BookPoint p;
    p.sheet = sheet;
    p.t = 1.0;
    p.spine = Eigen::VectorXd::Zero(1);
    bpts.push_back(p);
  }
  const std::vector<double> third(3, 1.0 / 3.0);
  const BookPoint spine = frechet_oracle(book, std::span(bpts), third);
  CHECK(spine.t == 0.0);
  CHECK(spine.sheet == 1);
}

TEST_CASE("certificate holds against the folding oracle on the book") {
  const BookSpace space(3, 1);
  SplitMix64 rng(337);
  for (int rep = 0; rep < 30; ++rep) {
    const int n = 2 + static_cast<int>(rng.below(6));
    std::vector<BookPoint> pts;
    for (int i = 0; i < n; ++i) pts.push_back(space.random_point(rng));
    const std::vector<double> w(pts.size(), 1.0 / pts.size());
    const BookPoint exact = book_frechet(space, pts, w);
    const auto lp = lim_palfia(space, std::span(pts), 60 * n);
    CHECK(space.distance(lp.estimate, exact) <= lp.error_certificate() + 1e-9);
  }
}
