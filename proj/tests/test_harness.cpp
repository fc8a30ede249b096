#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

#include "hadamard/harness.hpp"

using namespace hadamard;

TEST_CASE("benchmark sequences instantiate the stated formulas") {
  const Eigen::MatrixXd first = spd_sequence_term(1);
  CHECK(first(0, 0) == doctest::Approx(1.1));
  CHECK(first(1, 1) == doctest::Approx(11.0));
  CHECK(spd_sequence_limit()(0, 0) == doctest::Approx(0.1));
  CHECK(spd_sequence_limit()(1, 1) == doctest::Approx(10.0));
  CHECK(spd_noise_matrix()(0, 0) == doctest::Approx(5.0));
  CHECK(spd_noise_matrix()(0, 1) == doctest::Approx(0.0));

  const BookPoint b1 = book_sequence_term(1);
  CHECK(b1.sheet == 1);
  CHECK(b1.t == doctest::Approx(3.0));
  CHECK(b1.spine[0] == doctest::Approx(9.0));
  const BookPoint b4 = book_sequence_term(4);
  CHECK(b4.t == doctest::Approx(1.5));
  CHECK(b4.spine[0] == doctest::Approx(9.5));
  CHECK(book_sequence_limit().t == doctest::Approx(1.0));
  CHECK(book_sequence_limit().spine[0] == doctest::Approx(10.0));

  CHECK_THROWS_AS(spd_sequence_term(0), std::invalid_argument);
  CHECK_THROWS_AS(book_sequence_term(0), std::invalid_argument);
}

TEST_CASE("contamination extremes and concentration") {
  std::vector<Eigen::MatrixXd> seq;
  for (int n = 1; n <= 10000; ++n) seq.push_back(spd_sequence_term(n));
  const Eigen::MatrixXd noise = spd_noise_matrix();
  auto noise_fn = [&](std::uint64_t, std::size_t) { return noise; };

  const auto untouched =
      huber_contaminate(std::span<const Eigen::MatrixXd>(seq), {0.0, 42}, noise_fn);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    CHECK((untouched[i] - seq[i]).norm() == doctest::Approx(0.0));
  }

  const auto all =
      huber_contaminate(std::span<const Eigen::MatrixXd>(seq), {1.0, 42}, noise_fn);
  for (const auto& m : all) CHECK((m - noise).norm() == doctest::Approx(0.0));

  const double eps = 0.1;
  const auto some =
      huber_contaminate(std::span<const Eigen::MatrixXd>(seq), {eps, 42}, noise_fn);
  int replaced = 0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if ((some[i] - seq[i]).norm() > 0) ++replaced;
  }
  const double n = static_cast<double>(seq.size());
  const double dev = 3.0 * std::sqrt(n * eps * (1.0 - eps));
  CHECK(std::abs(replaced - n * eps) <= dev);

  CHECK_THROWS_AS(huber_contaminate(std::span<const Eigen::MatrixXd>(seq), {1.5, 0}, noise_fn),
                  std::invalid_argument);
}

TEST_CASE("contamination depends only on (seed, index)") {
  std::vector<Eigen::MatrixXd> seq;
  for (int n = 1; n <= 200; ++n) seq.push_back(spd_sequence_term(n));
  const Eigen::MatrixXd noise = spd_noise_matrix();
  auto noise_fn = [&](std::uint64_t, std::size_t) { return noise; };
  const auto a = huber_contaminate(std::span<const Eigen::MatrixXd>(seq), {0.3, 7}, noise_fn);
  const auto b = huber_contaminate(std::span<const Eigen::MatrixXd>(seq), {0.3, 7}, noise_fn);
  const auto c = huber_contaminate(std::span<const Eigen::MatrixXd>(seq), {0.3, 8}, noise_fn);
  int differs = 0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    CHECK((a[i] - b[i]).norm() == doctest::Approx(0.0));
    if ((a[i] - c[i]).norm() > 0) ++differs;
  }
  CHECK(differs > 0);
}

TEST_CASE("experiment runs are reproducible row by row") {
  ExperimentConfig config;
  config.experiment = ExperimentKind::kSpdDiagonal;
  config.n_max = 300;
  config.epsilon = 0.05;
  config.base_seed = 9;
  config.replications = 2;
  config.estimators = {EstimatorTag::kInductive, EstimatorTag::kHansen,
                       EstimatorTag::kResampled};

  const RunResult a = run_experiment(config);
  const RunResult b = run_experiment(config);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].value == b.rows[i].value);
    CHECK(a.rows[i].n == b.rows[i].n);
    CHECK(a.rows[i].replication == b.rows[i].replication);
  }
  CHECK(a.config_echo == config);

  // Sorted by (estimator, replication, n, metric).
  for (std::size_t i = 1; i < a.rows.size(); ++i) {
    const auto key = [](const RunRow& r) {
      return std::make_tuple(std::string(estimator_name(r.estimator)), r.replication, r.n,
                             std::string(metric_name(r.metric)));
    };
    CHECK(key(a.rows[i - 1]) < key(a.rows[i]));
  }
}

TEST_CASE("rows of one replication are unchanged by adding more replications") {
  ExperimentConfig small;
  small.experiment = ExperimentKind::kOpenBook;
  small.n_max = 200;
  small.epsilon = 0.2;
  small.base_seed = 4;
  small.replications = 1;
  small.estimators = {EstimatorTag::kInductive, EstimatorTag::kResampled};

  ExperimentConfig large = small;
  large.replications = 3;

  const RunResult a = run_experiment(small);
  const RunResult b = run_experiment(large);

  std::map<std::tuple<std::string, int, std::int64_t, std::string>, double> b_rows;
  for (const auto& row : b.rows) {
    b_rows[{estimator_name(row.estimator), row.replication, row.n, metric_name(row.metric)}] =
        row.value;
  }
  for (const auto& row : a.rows) {
    const auto it = b_rows.find(
        {estimator_name(row.estimator), row.replication, row.n, metric_name(row.metric)});
    REQUIRE(it != b_rows.end());
    CHECK(it->second == row.value);
  }
}

TEST_CASE("uncontaminated estimators converge toward the limit matrix") {
  ExperimentConfig config;
  config.experiment = ExperimentKind::kSpdDiagonal;
  config.n_max = 2000;
  config.epsilon = 0.0;
  config.base_seed = 1;
  config.replications = 2;
  config.estimators = {EstimatorTag::kInductive, EstimatorTag::kResampled,
                       EstimatorTag::kLimPalfia};

  const RunResult result = run_experiment(config);
  std::map<std::string, std::map<std::int64_t, double>> intrinsic;
  for (const auto& row : result.rows) {
    if (row.metric == Metric::kIntrinsic && row.replication == 0) {
      intrinsic[estimator_name(row.estimator)][row.n] = row.value;
    }
  }
  for (const auto& [name, curve] : intrinsic) {
    CAPTURE(name);
    CHECK(curve.at(2000) <= 0.10 * curve.at(10));
  }
}

TEST_CASE("spectral rows exist only for the matrix experiment") {
  ExperimentConfig config;
  config.experiment = ExperimentKind::kOpenBook;
  config.n_max = 50;
  config.replications = 1;
  config.estimators = {EstimatorTag::kInductive};
  const RunResult result = run_experiment(config);
  for (const auto& row : result.rows) CHECK(row.metric == Metric::kIntrinsic);
}

TEST_CASE("config validation names the offending field") {
  ExperimentConfig config;
  config.replications = 0;
  try {
    config.validate();
    FAIL("expected validation to throw");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("replications") != std::string::npos);
  }

  ExperimentConfig es;
  es.estimators = {EstimatorTag::kEsSahib};
  CHECK_THROWS_AS(es.validate(), std::invalid_argument);

  ExperimentConfig eps;
  eps.epsilon = 1.2;
  CHECK_THROWS_AS(eps.validate(), std::invalid_argument);
}

TEST_CASE("exact book barycenter under contamination: sheet retention and stickiness") {
  // With noise spread uniformly over the three sheets, the folded first
  // coordinate of the mixture is (1 - eps) E[t | signal] - eps / 3, positive
  // until eps is roughly 3/4: at 35% noise the barycenter stays on the
  // signal sheet near t = 1 - 4 eps / 3, and only heavy contamination (80%)
  // pushes it onto the spine.
  const BookSpace space(kBookExperimentSheets, 1);
  const std::int64_t n = 1000;
  std::vector<BookPoint> raw;
  for (std::int64_t k = 1; k <= n; ++k) raw.push_back(book_sequence_term(k));
  const std::vector<double> w(raw.size(), 1.0 / static_cast<double>(raw.size()));

  auto contaminated_mean = [&](double eps, std::uint64_t seed) {
    const auto data = huber_contaminate(
        std::span<const BookPoint>(raw), {eps, seed}, [&](std::uint64_t word, std::size_t) {
          const int sheet = static_cast<int>(bounded(splitmix64(word), 3)) + 1;
          return book_noise_point(sheet);
        });
    return book_frechet(space, data, w);
  };

  int on_sheet_one = 0, on_spine = 0;
  const int reps = 20;
  for (int r = 0; r < reps; ++r) {
    const BookPoint mid = contaminated_mean(0.35, mix_seed(71, r));
    if (mid.sheet == 1 && mid.t > 0.4 && mid.t < 0.65) ++on_sheet_one;
    const BookPoint heavy = contaminated_mean(0.80, mix_seed(72, r));
    if (heavy.t == 0.0) ++on_spine;
  }
  CHECK(on_sheet_one > reps / 2);
  CHECK(on_spine > reps / 2);
}

TEST_CASE("quadratic-mean bound holds on both generators") {
  const std::vector<std::int64_t> grid{10, 100, 1000};
  for (const auto gen :
       {BoundGenerator::kEuclideanHetero, BoundGenerator::kSpdCommutingHetero}) {
    const BoundCheckReport report = monte_carlo_bound_check(gen, grid, 100, 3);
    CHECK(report.pass);
    REQUIRE(report.rows.size() == grid.size());
    for (const auto& row : report.rows) {
      CHECK(row.pass);
      CHECK(row.empirical - row.half_width <= row.bound);
      // The bound is far from tight; the empirical error sits well below it.
      CHECK(row.empirical <= row.bound);
    }
    // The error decays with n.
    CHECK(report.rows.back().empirical < report.rows.front().empirical);
  }
  CHECK_THROWS_AS(
      monte_carlo_bound_check(BoundGenerator::kEuclideanHetero, grid, 1, 0),
      std::invalid_argument);
}
