#pragma once

#include <iosfwd>
#include <string>

#include "hadamard/harness.hpp"

namespace hadamard {

// Writes rows in their sorted order with the fixed header
// experiment,estimator,replication,n,metric,value and reals at 17
// significant digits.
void emit_csv(const RunResult& result, std::ostream& out);
void write_csv(const RunResult& result, const std::string& path);

}  // namespace hadamard
