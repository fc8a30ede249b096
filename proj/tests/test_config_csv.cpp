#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "hadamard/config.hpp"
#include "hadamard/csv.hpp"
#include "hadamard/svg.hpp"

using namespace hadamard;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("config round-trips exactly, including awkward reals") {
  ExperimentConfig config;
  config.experiment = ExperimentKind::kOpenBook;
  config.n_max = 4321;
  config.epsilon = 0.1 + 0.2;  // not representable, must survive 17 digits
  config.base_seed = 18446744073709551615ULL;
  config.replications = 7;
  config.estimators = {EstimatorTag::kResampled, EstimatorTag::kLimPalfia};
  config.lp_budget_exponent = 1.75;
  config.trace_stride = 50;

  const ExperimentConfig parsed = parse_config_text(serialize_config(config));
  CHECK(parsed == config);
  CHECK(serialize_config(parsed) == serialize_config(config));
}

TEST_CASE("config parser reports the offending field") {
  try {
    parse_config_text("n-max = soon\n");
    FAIL("expected parse failure");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("n-max") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config_text("volume = 11\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config_text("just some words\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config_text("estimators = inductive,psychic\n"),
                  std::invalid_argument);
  CHECK_THROWS_AS(load_config("/nonexistent/config.txt"), std::invalid_argument);

  const ExperimentConfig commented = parse_config_text(
      "# a comment\n"
      "n-max = 12   # trailing\n"
      "\n"
      "epsilon = 0.5\n");
  CHECK(commented.n_max == 12);
  CHECK(commented.epsilon == doctest::Approx(0.5));
}

TEST_CASE("csv schema and determinism") {
  ExperimentConfig config;
  config.experiment = ExperimentKind::kSpdDiagonal;
  config.n_max = 120;
  config.epsilon = 0.08;
  config.base_seed = 21;
  config.replications = 2;

  const RunResult result = run_experiment(config);
  std::ostringstream a, b;
  emit_csv(result, a);
  emit_csv(run_experiment(config), b);
  CHECK(a.str() == b.str());
  CHECK(a.str().rfind("experiment,estimator,replication,n,metric,value\n", 0) == 0);

  // Header-only output for an empty result.
  RunResult empty;
  std::ostringstream c;
  emit_csv(empty, c);
  CHECK(c.str() == "experiment,estimator,replication,n,metric,value\n");

  // One row becomes exactly two lines.
  RunResult one;
  one.rows.push_back({ExperimentKind::kSpdDiagonal, EstimatorTag::kInductive, 0, 10,
                      Metric::kIntrinsic, 0.125});
  std::ostringstream d;
  emit_csv(one, d);
  CHECK(d.str() ==
        "experiment,estimator,replication,n,metric,value\n"
        "spd-diagonal,inductive,0,10,intrinsic,0.125\n");
}

TEST_CASE("csv writer reaches the filesystem and reports io failures") {
  ExperimentConfig config;
  config.n_max = 30;
  config.replications = 1;
  const RunResult result = run_experiment(config);
  const std::string path = "csv_writer_probe.csv";
  write_csv(result, path);
  const std::string body = slurp(path);
  CHECK(body.find("spd-diagonal,inductive,0,1,intrinsic,") != std::string::npos);
  std::remove(path.c_str());

  CHECK_THROWS_AS(write_csv(result, "/nonexistent-dir/out.csv"), IoError);
}

TEST_CASE("svg charts derive from the rows") {
  ExperimentConfig config;
  config.n_max = 200;
  config.epsilon = 0.05;
  config.replications = 2;
  const RunResult result = run_experiment(config);
  const auto files = write_svg_charts(result, ".");
  REQUIRE(files.size() == 2);  // intrinsic + spectral
  for (const auto& file : files) {
    const std::string body = slurp(file);
    CHECK(body.find("<svg") != std::string::npos);
    CHECK(body.find("polyline") != std::string::npos);
    CHECK(body.find("hansen") != std::string::npos);
    std::remove(file.c_str());
  }
}
