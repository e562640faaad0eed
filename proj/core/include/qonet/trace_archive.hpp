#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qonet/check_result.hpp"

namespace qonet {

/// Every table emitted by a simulation run, plus the metadata identifying
/// the configuration that produced it. Serialization is deterministic:
/// identical archives produce byte-identical files.
struct TraceArchive {
  std::uint64_t config_hash = 0;
  std::string tool_version;

  std::vector<double> grid;
  int state_dim = 0;
  std::vector<Eigen::MatrixXd> traces;       ///< Per output row.
  std::vector<Eigen::MatrixXd> running_avg;  ///< Per output row.
  /// Closed-form full-output averages at each requested horizon T.
  std::vector<std::pair<double, Eigen::MatrixXd>> horizon_averages;
  std::vector<CheckResult> residuals;
  std::vector<std::string> advisories;
};

/// Writes `name,rows,cols` then one comma-separated line per row.
void write_matrix_block(std::ostream& out, const std::string& name,
                        const Eigen::MatrixXd& m);

/// Writes the archive into `out_dir` (created if absent): one trace and one
/// running-average table per output row, combined tables, the horizon
/// averages, the residual report, metadata, and a single-file archive.
/// `artifacts` filters which groups are written (tokens as in the config
/// [outputs] section).
void write_trace_archive(const TraceArchive& archive,
                         const std::string& out_dir,
                         const std::vector<std::string>& artifacts);

}  // namespace qonet
