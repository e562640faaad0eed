#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qonet/config.hpp"
#include "qonet/network_synthesis.hpp"
#include "qonet/trace_archive.hpp"
#include "qonet/verification.hpp"

namespace qonet {

/// Realization, augmented system and definiteness certificate produced by
/// one synthesis run.
struct SynthesisOutput {
  NetworkRealization realization;
  AugmentedSystem augmented;
  DefinitenessReport certificate;
};

/// Builds and certifies the configured network. Writes realization.csv into
/// `out_dir` when given.
SynthesisOutput run_synthesize(const ExperimentConfig& cfg,
                               const std::optional<std::string>& out_dir);

/// Propagates the configured system over its grid, computes traces, running
/// averages and the closed-form horizon averages, and collects invariant
/// residuals. Writes the archive into `out_dir` when given.
TraceArchive run_simulate(const ExperimentConfig& cfg,
                          const std::optional<std::string>& out_dir);

/// Full verification battery for a configured network.
std::vector<CheckResult> run_verify(const ExperimentConfig& cfg,
                                    std::uint64_t seed);

/// Verification sweep across random connected graphs (used when `verify`
/// runs without a config).
std::vector<CheckResult> run_verify_sweep(std::uint64_t seed, int count);

/// Renders a check table in the report format used on stdout and in
/// verify_report.csv.
std::string render_check_report(const std::vector<CheckResult>& checks);

}  // namespace qonet
