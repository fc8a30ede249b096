#pragma once

#include <string>

#include "hadamard/harness.hpp"

namespace hadamard {

// Flat key = value experiment description. Keys: experiment, n-max, epsilon,
// seed, replications, estimators, lp-exponent, trace-stride. '#' starts a
// comment. Serialization round-trips exactly (reals at 17 significant
// digits).
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);
std::string serialize_config(const ExperimentConfig& config);
void save_config(const ExperimentConfig& config, const std::string& path);

// Applies one assignment; throws std::invalid_argument naming the key.
void apply_config_entry(ExperimentConfig& config, const std::string& key,
                        const std::string& value);

EstimatorTag estimator_from_name(const std::string& name);
ExperimentKind experiment_from_name(const std::string& name);

}  // namespace hadamard
