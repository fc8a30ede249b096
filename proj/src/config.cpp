#include "hadamard/config.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hadamard {
namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::int64_t parse_int(const std::string& value, const std::string& key) {
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(value.c_str(), &end, 10);
  if (errno != 0 || end == value.c_str() || *end != '\0') {
    throw std::invalid_argument("config field " + key + ": expected an integer, got '" + value +
                                "'");
  }
  return v;
}

std::uint64_t parse_uint(const std::string& value, const std::string& key) {
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(value.c_str(), &end, 10);
  if (errno != 0 || end == value.c_str() || *end != '\0' || value.find('-') != std::string::npos) {
    throw std::invalid_argument("config field " + key + ": expected a nonnegative integer, got '" +
                                value + "'");
  }
  return v;
}

double parse_real(const std::string& value, const std::string& key) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (errno != 0 || end == value.c_str() || *end != '\0') {
    throw std::invalid_argument("config field " + key + ": expected a real number, got '" + value +
                                "'");
  }
  return v;
}

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

EstimatorTag estimator_from_name(const std::string& name) {
  if (name == "inductive") return EstimatorTag::kInductive;
  if (name == "hansen") return EstimatorTag::kHansen;
  if (name == "es-sahib") return EstimatorTag::kEsSahib;
  if (name == "resampled") return EstimatorTag::kResampled;
  if (name == "lim-palfia") return EstimatorTag::kLimPalfia;
  throw std::invalid_argument("unknown estimator '" + name + "'");
}

ExperimentKind experiment_from_name(const std::string& name) {
  if (name == "spd-diagonal") return ExperimentKind::kSpdDiagonal;
  if (name == "open-book") return ExperimentKind::kOpenBook;
  throw std::invalid_argument("unknown experiment '" + name + "'");
}

void apply_config_entry(ExperimentConfig& config, const std::string& key,
                        const std::string& value) {
  if (key == "experiment") {
    config.experiment = experiment_from_name(value);
  } else if (key == "n-max") {
    config.n_max = parse_int(value, key);
  } else if (key == "epsilon") {
    config.epsilon = parse_real(value, key);
  } else if (key == "seed") {
    config.base_seed = parse_uint(value, key);
  } else if (key == "replications") {
    const std::int64_t v = parse_int(value, key);
    config.replications = static_cast<int>(v);
  } else if (key == "estimators") {
    std::vector<EstimatorTag> tags;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (!item.empty()) tags.push_back(estimator_from_name(item));
    }
    config.estimators = std::move(tags);
  } else if (key == "lp-exponent") {
    config.lp_budget_exponent = parse_real(value, key);
  } else if (key == "trace-stride") {
    config.trace_stride = parse_int(value, key);
  } else {
    throw std::invalid_argument("unknown config field '" + key + "'");
  }
}

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig config;
  std::stringstream stream(text);
  std::string line;
  int line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected 'key = value', got '" + line + "'");
    }
    apply_config_entry(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  config.validate();
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config file '" + path + "' is not readable");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

std::string serialize_config(const ExperimentConfig& config) {
  std::string estimators;
  for (const EstimatorTag tag : config.estimators) {
    if (!estimators.empty()) estimators += ",";
    estimators += estimator_name(tag);
  }
  std::string out;
  out += "experiment = " + std::string(experiment_name(config.experiment)) + "\n";
  out += "n-max = " + std::to_string(config.n_max) + "\n";
  out += "epsilon = " + format_real(config.epsilon) + "\n";
  out += "seed = " + std::to_string(config.base_seed) + "\n";
  out += "replications = " + std::to_string(config.replications) + "\n";
  out += "estimators = " + estimators + "\n";
  out += "lp-exponent = " + format_real(config.lp_budget_exponent) + "\n";
  out += "trace-stride = " + std::to_string(config.trace_stride) + "\n";
  return out;
}

void save_config(const ExperimentConfig& config, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << serialize_config(config);
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace hadamard
