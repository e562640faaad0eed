#include "qonet/trace_archive.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "qonet/errors.hpp"
#include "qonet/text_util.hpp"

namespace qonet {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw Error("cannot open output file: " + path.string());
  }
  return out;
}

bool wants(const std::vector<std::string>& artifacts, const char* token) {
  return std::find(artifacts.begin(), artifacts.end(), token) !=
         artifacts.end();
}

void write_table_header(std::ostream& out, int row, int dim) {
  out << "time";
  for (int j = 1; j <= dim; ++j) {
    out << ",row" << row << "_col" << j;
  }
  out << "\n";
}

void write_table(std::ostream& out, const std::vector<double>& grid,
                 const Eigen::MatrixXd& table) {
  for (Eigen::Index s = 0; s < table.rows(); ++s) {
    out << format_double(grid[static_cast<std::size_t>(s)]);
    for (Eigen::Index j = 0; j < table.cols(); ++j) {
      out << ',' << format_double(table(s, j));
    }
    out << "\n";
  }
}

void write_combined(std::ostream& out, const std::vector<double>& grid,
                    const std::vector<Eigen::MatrixXd>& tables) {
  out << "time";
  for (std::size_t k = 0; k < tables.size(); ++k) {
    for (Eigen::Index j = 1; j <= tables[k].cols(); ++j) {
      out << ",row" << (k + 1) << "_col" << j;
    }
  }
  out << "\n";
  for (std::size_t s = 0; s < grid.size(); ++s) {
    out << format_double(grid[s]);
    for (const Eigen::MatrixXd& table : tables) {
      for (Eigen::Index j = 0; j < table.cols(); ++j) {
        out << ',' << format_double(table(static_cast<Eigen::Index>(s), j));
      }
    }
    out << "\n";
  }
}

void write_metadata(std::ostream& out, const TraceArchive& a) {
  out << "key,value\n";
  out << "tool_version," << a.tool_version << "\n";
  out << "config_hash," << hash_hex(a.config_hash) << "\n";
  out << "output_rows," << a.traces.size() << "\n";
  out << "state_dim," << a.state_dim << "\n";
  out << "grid_points," << a.grid.size() << "\n";
}

void write_residuals(std::ostream& out, const TraceArchive& a) {
  out << "name,value,threshold,status\n";
  for (const CheckResult& c : a.residuals) {
    out << c.name << ',' << format_double(c.value) << ','
        << format_double(c.threshold) << ','
        << (c.advisory ? "advisory" : (c.pass ? "pass" : "fail")) << "\n";
  }
  for (const std::string& note : a.advisories) {
    const auto colon = note.find(':');
    out << note.substr(0, colon) << ",,," << "advisory" << "\n";
  }
}

void write_horizons(std::ostream& out, const TraceArchive& a) {
  out << "T,output_row";
  for (int j = 1; j <= a.state_dim; ++j) out << ",col" << j;
  out << "\n";
  for (const auto& [T, avg] : a.horizon_averages) {
    for (Eigen::Index k = 0; k < avg.rows(); ++k) {
      out << format_double(T) << ',' << (k + 1);
      for (Eigen::Index j = 0; j < avg.cols(); ++j) {
        out << ',' << format_double(avg(k, j));
      }
      out << "\n";
    }
  }
}

}  // namespace

void write_matrix_block(std::ostream& out, const std::string& name,
                        const Eigen::MatrixXd& m) {
  out << name << ',' << m.rows() << ',' << m.cols() << "\n";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) out << ',';
      out << format_double(m(r, c));
    }
    out << "\n";
  }
}

void write_trace_archive(const TraceArchive& archive,
                         const std::string& out_dir,
                         const std::vector<std::string>& artifacts) {
  const std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);

  {
    auto out = open_out(dir / "metadata.csv");
    write_metadata(out, archive);
  }

  if (wants(artifacts, "traces")) {
    for (std::size_t k = 0; k < archive.traces.size(); ++k) {
      auto out = open_out(dir / ("trace_row_" + std::to_string(k + 1) +
                                 ".csv"));
      write_table_header(out, static_cast<int>(k + 1), archive.state_dim);
      write_table(out, archive.grid, archive.traces[k]);
    }
    auto out = open_out(dir / "traces.csv");
    write_combined(out, archive.grid, archive.traces);
  }

  if (wants(artifacts, "averages")) {
    for (std::size_t k = 0; k < archive.running_avg.size(); ++k) {
      auto out = open_out(dir / ("average_row_" + std::to_string(k + 1) +
                                 ".csv"));
      write_table_header(out, static_cast<int>(k + 1), archive.state_dim);
      write_table(out, archive.grid, archive.running_avg[k]);
    }
    auto combined = open_out(dir / "averages.csv");
    write_combined(combined, archive.grid, archive.running_avg);
    auto horizons = open_out(dir / "horizon_averages.csv");
    write_horizons(horizons, archive);
  }

  if (wants(artifacts, "residuals")) {
    auto out = open_out(dir / "residuals.csv");
    write_residuals(out, archive);
  }

  // Single-file form of everything above.
  auto out = open_out(dir / "archive.csv");
  write_metadata(out, archive);
  if (wants(artifacts, "traces")) {
    out << "\n";
    write_combined(out, archive.grid, archive.traces);
  }
  if (wants(artifacts, "averages")) {
    out << "\n";
    write_combined(out, archive.grid, archive.running_avg);
    out << "\n";
    write_horizons(out, archive);
  }
  if (wants(artifacts, "residuals")) {
    out << "\n";
    write_residuals(out, archive);
  }
}

}  // namespace qonet
