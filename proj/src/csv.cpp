#include "hadamard/csv.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

namespace hadamard {

void emit_csv(const RunResult& result, std::ostream& out) {
  out << "experiment,estimator,replication,n,metric,value\n";
  char value[64];
  for (const RunRow& row : result.rows) {
    std::snprintf(value, sizeof(value), "%.17g", row.value);
    out << experiment_name(row.experiment) << ',' << estimator_name(row.estimator) << ','
        << row.replication << ',' << row.n << ',' << metric_name(row.metric) << ',' << value
        << '\n';
  }
}

void write_csv(const RunResult& result, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  emit_csv(result, out);
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace hadamard
