#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

#include "qonet/graph_generator.hpp"
#include "qonet/spin_algebra.hpp"

namespace qonet {

struct GridSpec {
  double t_max = 10.0;
  double step = 0.01;
};

/// Graph section of an experiment: either an explicit [i, j, mu] edge list
/// or one of the named generators.
struct GraphConfig {
  int observer_count = 0;
  std::optional<GraphKind> generator;
  double weight = 1.0;  ///< Edge weight for complete/path/star.
  std::uint64_t seed = 0;
  double weight_min = 0.1;
  double weight_max = 2.0;
  std::vector<std::tuple<int, int, double>> edges;
};

struct ExperimentConfig {
  PlantSpec plant;
  GraphConfig graph;
  Eigen::Vector2d alpha1 = Eigen::Vector2d::Zero();
  GridSpec grid;
  std::vector<double> horizons = {10, 50, 100, 500, 1000};
  std::vector<std::string> outputs = {"realization", "traces", "averages",
                                      "residuals"};
};

/// Parses the sectioned key/value experiment format. Throws ConfigError with
/// the offending line or field named in the message.
ExperimentConfig parse_config(const std::string& text);

/// parse_config over the contents of `path`.
ExperimentConfig load_config_file(const std::string& path);

/// Canonical text form; parse_config(serialize_config(c)) reproduces c
/// exactly (doubles round-trip via shortest form).
std::string serialize_config(const ExperimentConfig& cfg);

/// Instantiates the configured graph (generator or explicit edges).
ObserverGraph build_graph(const GraphConfig& graph);

/// Hash of the canonical serialized form; stamped into emitted archives.
std::uint64_t config_hash(const ExperimentConfig& cfg);

const char* graph_kind_name(GraphKind kind);

}  // namespace qonet
