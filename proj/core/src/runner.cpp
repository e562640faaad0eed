#include "qonet/runner.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qonet/dynamics_engine.hpp"
#include "qonet/errors.hpp"
#include "qonet/text_util.hpp"
#include "qonet/version.hpp"

namespace qonet {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw Error("cannot open output file: " + path.string());
  }
  return out;
}

void write_scalar(std::ostream& out, const std::string& name, double value) {
  out << name << ',' << format_double(value) << "\n";
}

}  // namespace

SynthesisOutput run_synthesize(const ExperimentConfig& cfg,
                               const std::optional<std::string>& out_dir) {
  cfg.plant.validate();
  const ObserverGraph graph = build_graph(cfg.graph);
  const CouplingScheme scheme =
      CouplingScheme::from_plant(cfg.plant, cfg.alpha1);

  SynthesisOutput result;
  result.realization = build_realization(graph, scheme);
  result.certificate = certify_positive_definite(result.realization);
  result.augmented = assemble_augmented(cfg.plant, result.realization);

  if (out_dir) {
    const std::filesystem::path dir(*out_dir);
    std::filesystem::create_directories(dir);
    auto out = open_out(dir / "realization.csv");
    out << "key,value\n";
    out << "tool_version," << kToolVersion << "\n";
    out << "config_hash," << hash_hex(config_hash(cfg)) << "\n";
    write_scalar(out, "lambda_min", result.certificate.lambda_min);
    write_scalar(out, "lambda_max", result.certificate.lambda_max);
    write_scalar(out, "reduced_lambda_min",
                 result.certificate.reduced_lambda_min);
    out << "certified," << (result.certificate.certified ? 1 : 0) << "\n";
    out << "\n";
    write_matrix_block(out, "omega", result.realization.omega.transpose());
    write_matrix_block(out, "R_o", result.realization.R_o);
    write_matrix_block(out, "A_o", result.realization.A_o);
    write_matrix_block(out, "b", result.realization.b);
    write_matrix_block(out, "C_o", result.realization.C_o);
    write_matrix_block(out, "A_a", result.augmented.A_a);
    write_matrix_block(out, "C_a", result.augmented.C_a);
  }
  return result;
}

TraceArchive run_simulate(const ExperimentConfig& cfg,
                          const std::optional<std::string>& out_dir) {
  const SynthesisOutput synth = run_synthesize(cfg, std::nullopt);

  const std::vector<double> grid =
      uniform_grid(cfg.grid.t_max, cfg.grid.step);
  const Propagator prop = propagate(synth.augmented, grid);
  SimulationResult sim = coefficient_traces(synth.augmented, prop);
  time_average_quadrature(sim);

  TraceArchive archive;
  archive.config_hash = config_hash(cfg);
  archive.tool_version = kToolVersion;
  archive.grid = sim.grid;
  archive.state_dim = synth.augmented.state_dim();
  archive.traces = sim.traces;
  archive.running_avg = sim.running_avg;
  archive.advisories = sim.advisories;

  for (double T : cfg.horizons) {
    archive.horizon_averages.emplace_back(
        T, time_average_closed_form(synth.augmented, T));
  }

  archive.residuals.push_back({"plant_row_constancy",
                               sim.residuals.at("plant_row_constancy"), 1e-8,
                               sim.residuals.at("plant_row_constancy") <= 1e-8,
                               false});
  const ConvergenceReport conv =
      check_convergence(synth.augmented, synth.realization, cfg.horizons);
  for (std::size_t k = 0; k < conv.horizons.size(); ++k) {
    archive.residuals.push_back(
        {"consensus_deviation_T" + format_double(conv.horizons[k]),
         conv.deviations[k], conv.bound_constant / conv.horizons[k],
         conv.deviations[k] <= conv.bound_constant / conv.horizons[k],
         false});
  }

  if (out_dir) {
    write_trace_archive(archive, *out_dir, cfg.outputs);
  }
  return archive;
}

std::vector<CheckResult> run_verify(const ExperimentConfig& cfg,
                                    std::uint64_t seed) {
  cfg.plant.validate();
  const ObserverGraph graph = build_graph(cfg.graph);

  std::vector<CheckResult> checks = verify_algebra(seed);
  auto network = verify_network(cfg.plant, graph, cfg.alpha1, seed);
  checks.insert(checks.end(), network.begin(), network.end());
  return checks;
}

std::vector<CheckResult> run_verify_sweep(std::uint64_t seed, int count) {
  std::vector<CheckResult> checks = verify_algebra(seed);
  auto sweep = verify_sweep(seed, count);
  checks.insert(checks.end(), sweep.begin(), sweep.end());
  return checks;
}

std::string render_check_report(const std::vector<CheckResult>& checks) {
  std::ostringstream out;
  out << "name,value,threshold,status\n";
  for (const CheckResult& c : checks) {
    out << c.name << ',' << format_double(c.value) << ','
        << format_double(c.threshold) << ','
        << (c.advisory ? "advisory" : (c.pass ? "pass" : "fail")) << "\n";
  }
  return out.str();
}

}  // namespace qonet
