#pragma once

#include <string>
#include <vector>

#include "hadamard/harness.hpp"

namespace hadamard {

// Renders one line chart per (experiment, metric) present in the rows, one
// series per estimator (mean over replications at each traced n), with a
// log-scaled n axis. Returns the written file paths. The charts are a pure
// function of the CSV rows.
std::vector<std::string> write_svg_charts(const RunResult& result, const std::string& dir);

}  // namespace hadamard
