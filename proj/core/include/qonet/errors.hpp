#pragma once

#include <stdexcept>
#include <string>

namespace qonet {

/// Base class for all qonet errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Configuration text could not be parsed or failed field validation.
/// Maps to exit code 1 in the command line tool.
class ConfigError : public Error {
 public:
  enum class Kind { parse, validation };

  ConfigError(Kind kind, const std::string& msg) : Error(msg), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Structural defect in a plant-observer graph.
class GraphError : public Error {
 public:
  enum class Kind { disconnected, nonpositive_weight, self_loop, bad_node };

  GraphError(Kind kind, const std::string& msg) : Error(msg), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Violation of a synthesis precondition or certificate.
class SynthesisError : public Error {
 public:
  enum class Kind {
    zero_alpha,
    nonzero_plant_hamiltonian,
    not_positive_definite,
    singular_drift,
  };

  SynthesisError(Kind kind, const std::string& msg) : Error(msg), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Bad input to the propagation or averaging kernels.
class SimulationError : public Error {
 public:
  enum class Kind { bad_grid, non_finite, zero_state };

  SimulationError(Kind kind, const std::string& msg) : Error(msg), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

}  // namespace qonet
