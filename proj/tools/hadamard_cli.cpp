// Command-line front end for the Hadamard means library. Talks to the shared
// library exclusively through the C interface in hadamard/hadamard.h.
#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hadamard/hadamard.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNumeric = 2;
constexpr int kExitCheckFailed = 3;

int exit_code_for(hm_status status) {
  switch (status) {
    case HM_OK: return kExitOk;
    case HM_ERR_INVALID_ARGUMENT:
    case HM_ERR_CAPACITY: return kExitValidation;
    case HM_ERR_NUMERIC:
    case HM_ERR_CONVERGENCE:
    case HM_ERR_IO: return kExitNumeric;
  }
  return kExitNumeric;
}

// Exits the process on failure so call sites can stay linear.
void check(hm_status status, const char* what) {
  if (status != HM_OK) {
    std::cerr << "error: " << what << ": " << hm_last_error() << "\n";
    std::exit(exit_code_for(status));
  }
}

struct SpaceHandle {
  hm_space* ptr = nullptr;
  ~SpaceHandle() { hm_space_free(ptr); }
};

struct PointsHandle {
  hm_points* ptr = nullptr;
  ~PointsHandle() { hm_points_free(ptr); }
};

// Space descriptors: euclidean:D | spd:D | book:K,D
hm_space* parse_space(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string args = colon == std::string::npos ? "" : text.substr(colon + 1);
  hm_space* space = nullptr;
  if (kind == "euclidean") {
    space = hm_space_euclidean(args.empty() ? 1 : std::atoi(args.c_str()));
  } else if (kind == "spd") {
    space = hm_space_spd(args.empty() ? 2 : std::atoi(args.c_str()));
  } else if (kind == "book") {
    int sheets = 3, dim = 1;
    if (!args.empty() && std::sscanf(args.c_str(), "%d,%d", &sheets, &dim) < 1) {
      std::cerr << "error: cannot parse book parameters '" << args << "'\n";
      std::exit(kExitValidation);
    }
    space = hm_space_open_book(sheets, dim);
  } else {
    std::cerr << "error: unknown space '" << text << "' (euclidean:D, spd:D, book:K,D)\n";
    std::exit(kExitValidation);
  }
  if (space == nullptr) {
    std::cerr << "error: " << hm_last_error() << "\n";
    std::exit(kExitValidation);
  }
  return space;
}

std::string format_point(const double* coords, int size) {
  std::string out;
  char buf[64];
  for (int i = 0; i < size; ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", coords[i]);
    if (i > 0) out += " ";
    out += buf;
  }
  return out;
}

std::uint64_t base_seed_from_env(std::uint64_t fallback) {
  const char* env = std::getenv("HADAMARD_SEED");
  if (env == nullptr || *env == '\0') return fallback;
  return std::strtoull(env, nullptr, 10);
}

int run_simulate(const std::string& config_path, const std::vector<std::string>& overrides,
                 const std::string& output_dir, bool emit_svg) {
  hm_config* config = hm_config_new();
  if (!config_path.empty()) {
    check(hm_config_load(config, config_path.c_str()), "loading config");
  }
  if (config_path.empty() || std::getenv("HADAMARD_SEED") != nullptr) {
    const std::uint64_t seed = base_seed_from_env(0);
    check(hm_config_set(config, "seed", std::to_string(seed).c_str()), "applying seed");
  }
  for (const std::string& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      std::cerr << "error: override '" << kv << "' is not key=value\n";
      return kExitValidation;
    }
    check(hm_config_set(config, kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str()),
          "applying override");
  }

  hm_result* result = nullptr;
  check(hm_experiment_run(config, &result), "running experiment");

  const std::string csv_path = output_dir + "/result.csv";
  const std::string echo_path = output_dir + "/config.txt";
  check(hm_result_write_csv(result, csv_path.c_str()), "writing CSV");
  check(hm_result_write_config_echo(result, echo_path.c_str()), "writing config echo");
  std::cout << "wrote " << csv_path << " (" << hm_result_rows(result) << " rows)\n";
  std::cout << "wrote " << echo_path << "\n";
  if (emit_svg) {
    check(hm_result_write_svg(result, output_dir.c_str()), "writing SVG charts");
    std::cout << "wrote SVG charts to " << output_dir << "\n";
  }
  hm_result_free(result);
  hm_config_free(config);
  return kExitOk;
}

int run_means(const std::string& space_text, const std::string& input_path,
              const std::vector<std::string>& estimators, std::uint64_t seed,
              std::int64_t lp_steps, double es_tol, int es_max_rounds) {
  SpaceHandle space{parse_space(space_text)};
  const int size = hm_space_point_size(space.ptr);

  std::ifstream in(input_path);
  if (!in) {
    std::cerr << "error: cannot read point file '" << input_path << "'\n";
    return kExitValidation;
  }
  PointsHandle points{hm_points_new(space.ptr)};
  std::string line;
  std::vector<double> coords;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ss(line);
    coords.clear();
    double v = 0.0;
    while (ss >> v) coords.push_back(v);
    if (coords.empty()) continue;
    if (static_cast<int>(coords.size()) != size) {
      std::cerr << "error: line " << line_no << ": expected " << size << " values, got "
                << coords.size() << "\n";
      return kExitValidation;
    }
    check(hm_points_push(points.ptr, coords.data()), "adding point");
  }
  const std::int64_t n = hm_points_size(points.ptr);
  if (n == 0) {
    std::cerr << "error: point file '" << input_path << "' holds no points\n";
    return kExitValidation;
  }

  std::vector<double> out(static_cast<std::size_t>(size));
  for (const std::string& name : estimators) {
    if (name == "inductive") {
      check(hm_mean_inductive(space.ptr, points.ptr, out.data()), "inductive mean");
      std::cout << "inductive: " << format_point(out.data(), size) << "\n";
    } else if (name == "hansen") {
      check(hm_mean_hansen(space.ptr, points.ptr, out.data()), "hansen mean");
      std::cout << "hansen: " << format_point(out.data(), size) << "\n";
    } else if (name == "es-sahib") {
      check(hm_mean_es_sahib(space.ptr, points.ptr, es_tol, es_max_rounds, out.data()),
            "es-sahib mean");
      std::cout << "es-sahib: " << format_point(out.data(), size) << "\n";
    } else if (name == "resampled") {
      check(hm_mean_resampled(space.ptr, points.ptr, seed, out.data()), "resampled mean");
      std::cout << "resampled: " << format_point(out.data(), size) << "\n";
    } else if (name == "lim-palfia") {
      double certificate = 0.0;
      const std::int64_t steps = lp_steps > 0 ? lp_steps : n * n;
      check(hm_mean_lim_palfia(space.ptr, points.ptr, nullptr, steps, out.data(), &certificate),
            "lim-palfia mean");
      std::cout << "lim-palfia: " << format_point(out.data(), size) << "\n";
      std::printf("lim-palfia certificate: %.17g\n", certificate);
    } else if (name == "frechet-oracle") {
      check(hm_frechet_oracle(space.ptr, points.ptr, nullptr, out.data()), "frechet oracle");
      std::cout << "frechet-oracle: " << format_point(out.data(), size) << "\n";
    } else {
      std::cerr << "error: unknown estimator '" << name << "'\n";
      return kExitValidation;
    }
  }
  return kExitOk;
}

struct CheckTarget {
  std::string label;
  double tol;
};

int run_check(std::vector<std::string> spaces, std::int64_t cases, std::uint64_t seed,
              double tol_override) {
  if (spaces.empty()) {
    spaces = {"euclidean:1", "euclidean:3", "spd:2", "spd:5", "book:3,1", "book:4,2"};
  }
  static const char* kNames[7] = {"symmetry", "identity", "triangle", "endpoint",
                                  "speed",    "npc",      "midpoint"};
  bool all_pass = true;
  std::printf("%-14s %-10s %-12s %-12s %s\n", "space", "cases", "worst", "tolerance", "status");
  for (const std::string& label : spaces) {
    SpaceHandle space{parse_space(label)};
    double violations[7] = {0};
    check(hm_check_space(space.ptr, cases, seed, violations), "property check");
    double tol = 1e-8;
    if (label.rfind("euclidean", 0) == 0) tol = 1e-12;
    if (label.rfind("book", 0) == 0) tol = 1e-10;
    if (tol_override > 0) tol = tol_override;
    double worst = 0.0;
    int worst_idx = 0;
    for (int i = 0; i < 7; ++i) {
      if (violations[i] > worst) {
        worst = violations[i];
        worst_idx = i;
      }
    }
    const bool pass = worst <= tol;
    all_pass = all_pass && pass;
    std::printf("%-14s %-10" PRId64 " %-12.3g %-12.3g %s (worst: %s)\n", label.c_str(), cases,
                worst, tol, pass ? "pass" : "FAIL", kNames[worst_idx]);
  }
  return all_pass ? kExitOk : kExitCheckFailed;
}

int run_bound(const std::string& generator, int replications, std::uint64_t seed,
              const std::string& grid_text) {
  std::vector<std::int64_t> grid;
  std::stringstream ss(grid_text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) grid.push_back(std::atoll(item.c_str()));
  }
  std::vector<double> empirical(grid.size()), half(grid.size()), bound(grid.size());
  std::vector<int> pass(grid.size());
  int all_pass = 0;
  check(hm_bound_check(generator.c_str(), grid.data(), static_cast<int>(grid.size()),
                       replications, seed, empirical.data(), half.data(), bound.data(),
                       pass.data(), &all_pass),
        "bound check");
  std::printf("%-10s %-14s %-14s %-14s %s\n", "n", "empirical", "3sigma", "bound", "status");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::printf("%-10" PRId64 " %-14.6g %-14.6g %-14.6g %s\n", grid[i], empirical[i], half[i],
                bound[i], pass[i] ? "pass" : "FAIL");
  }
  return all_pass ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Means and robust mean estimation on Hadamard spaces"};
  app.require_subcommand(1);

  // simulate
  auto* simulate = app.add_subcommand("simulate", "run a contamination experiment, emit CSV");
  std::string config_path;
  std::string output_dir = ".";
  bool emit_svg = false;
  std::vector<std::string> overrides;
  std::string experiment, estimators_csv;
  double epsilon = -1.0;
  std::int64_t n_max = -1, trace_stride = -1;
  std::int64_t replications = -1;
  double lp_exponent = -1.0;
  std::int64_t seed_flag = -1;
  simulate->add_option("--config", config_path, "config file (flat key = value)");
  simulate->add_option("--experiment", experiment, "spd-diagonal | open-book");
  simulate->add_option("--epsilon", epsilon, "contamination level in [0,1]");
  simulate->add_option("--n-max", n_max, "sequence length");
  simulate->add_option("--seed", seed_flag, "base seed");
  simulate->add_option("--replications", replications, "independent replications");
  simulate->add_option("--estimators", estimators_csv,
                       "comma list of inductive,hansen,resampled,lim-palfia");
  simulate->add_option("--lp-exponent", lp_exponent, "cyclic-scheme budget k = n^exponent");
  simulate->add_option("--trace-stride", trace_stride, "0 = log-spaced trace grid");
  simulate->add_option("--output-dir", output_dir, "directory for result.csv/config.txt");
  simulate->add_flag("--emit-svg", emit_svg, "also render SVG line charts");

  // means
  auto* means = app.add_subcommand("means", "compute means of a point list file");
  std::string space_text = "euclidean:1";
  std::string input_path;
  std::vector<std::string> estimator_names{"inductive"};
  std::uint64_t mseed = 0;
  std::int64_t lp_steps = 0;
  double es_tol = 1e-9;
  int es_max_rounds = 200;
  means->add_option("--space", space_text, "euclidean:D | spd:D | book:K,D");
  means->add_option("--input", input_path, "point file, one point per line")->required();
  means->add_option("--estimators", estimator_names,
                    "inductive,hansen,es-sahib,resampled,lim-palfia,frechet-oracle")
      ->delimiter(',');
  means->add_option("--seed", mseed, "seed for the resampled mean");
  means->add_option("--lp-steps", lp_steps, "lim-palfia step budget (default n^2)");
  means->add_option("--es-tol", es_tol, "es-sahib diameter tolerance");
  means->add_option("--es-max-rounds", es_max_rounds, "es-sahib round budget");

  // check
  auto* checkcmd = app.add_subcommand("check", "geometry property suite");
  std::vector<std::string> check_spaces;
  std::int64_t cases = 1000;
  std::uint64_t check_seed = 0;
  double tol_override = -1.0;
  checkcmd->add_option("--space", check_spaces, "space descriptors (repeatable)")
      ->delimiter(',');
  checkcmd->add_option("--cases", cases, "random triples per space");
  checkcmd->add_option("--seed", check_seed, "sampler seed");
  checkcmd->add_option("--tol", tol_override, "override the per-space tolerance");

  // bound
  auto* boundcmd = app.add_subcommand("bound", "Monte-Carlo check of the quadratic-mean bound");
  std::string generator = "euclidean-hetero";
  int reps = 500;
  std::uint64_t bound_seed = 0;
  std::string grid_text = "10,100,1000,10000";
  boundcmd->add_option("--generator", generator, "euclidean-hetero | spd-commuting-hetero");
  boundcmd->add_option("--reps", reps, "replications");
  boundcmd->add_option("--seed", bound_seed, "base seed");
  boundcmd->add_option("--grid", grid_text, "comma list of sample sizes");

  CLI11_PARSE(app, argc, argv);

  if (simulate->parsed()) {
    if (!experiment.empty()) overrides.push_back("experiment=" + experiment);
    if (epsilon >= 0.0) overrides.push_back("epsilon=" + std::to_string(epsilon));
    if (n_max >= 0) overrides.push_back("n-max=" + std::to_string(n_max));
    if (seed_flag >= 0) overrides.push_back("seed=" + std::to_string(seed_flag));
    if (replications >= 0) overrides.push_back("replications=" + std::to_string(replications));
    if (!estimators_csv.empty()) overrides.push_back("estimators=" + estimators_csv);
    if (lp_exponent >= 0.0) overrides.push_back("lp-exponent=" + std::to_string(lp_exponent));
    if (trace_stride >= 0) overrides.push_back("trace-stride=" + std::to_string(trace_stride));
    return run_simulate(config_path, overrides, output_dir, emit_svg);
  }
  if (means->parsed()) {
    return run_means(space_text, input_path, estimator_names, mseed, lp_steps, es_tol,
                     es_max_rounds);
  }
  if (checkcmd->parsed()) {
    return run_check(check_spaces, cases, check_seed, tol_override);
  }
  if (boundcmd->parsed()) {
    return run_bound(generator, reps, bound_seed, grid_text);
  }
  return kExitValidation;
}
