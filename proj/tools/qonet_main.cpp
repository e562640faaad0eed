#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qonet/dynamics_engine.hpp"
#include "qonet/errors.hpp"
#include "qonet/runner.hpp"
#include "qonet/text_util.hpp"
#include "qonet/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitSynthesis = 2;
constexpr int kExitVerification = 3;

struct CommonOpts {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 42;
  bool seed_given = false;
  double t_max = 0.0;
  double step = 0.0;
  std::vector<double> horizons;
};

qonet::ExperimentConfig load_with_overrides(const CommonOpts& opts) {
  qonet::ExperimentConfig cfg = qonet::load_config_file(opts.config_path);
  if (opts.seed_given) cfg.graph.seed = opts.seed;
  if (opts.t_max > 0.0) cfg.grid.t_max = opts.t_max;
  if (opts.step > 0.0) cfg.grid.step = opts.step;
  if (!opts.horizons.empty()) cfg.horizons = opts.horizons;
  return cfg;
}

std::optional<std::string> out_dir_of(const CommonOpts& opts) {
  if (opts.out_dir.empty()) return std::nullopt;
  return opts.out_dir;
}

int do_synthesize(const CommonOpts& opts) {
  const qonet::ExperimentConfig cfg = load_with_overrides(opts);
  const qonet::SynthesisOutput result =
      qonet::run_synthesize(cfg, out_dir_of(opts));

  std::cout << "observers: " << result.realization.observer_count() << "\n";
  std::cout << "omega:";
  for (Eigen::Index k = 0; k < result.realization.omega.size(); ++k) {
    std::cout << ' ' << qonet::format_double(result.realization.omega(k));
  }
  std::cout << "\n";
  std::cout << "lambda_min(R_o) = "
            << qonet::format_double(result.certificate.lambda_min)
            << "  (reduced route: "
            << qonet::format_double(result.certificate.reduced_lambda_min)
            << ")\n";
  std::cout << "certified positive definite: "
            << (result.certificate.certified ? "yes" : "no") << "\n";
  if (!opts.out_dir.empty()) {
    std::cout << "wrote " << opts.out_dir << "/realization.csv\n";
  }
  return kExitOk;
}

int do_simulate(const CommonOpts& opts) {
  const qonet::ExperimentConfig cfg = load_with_overrides(opts);
  const qonet::TraceArchive archive =
      qonet::run_simulate(cfg, out_dir_of(opts));

  std::cout << "grid points: " << archive.grid.size() << "\n";
  std::cout << "output rows: " << archive.traces.size() << "\n";
  for (const std::string& note : archive.advisories) {
    std::cout << "advisory: " << note << "\n";
  }
  for (const qonet::CheckResult& c : archive.residuals) {
    std::cout << c.name << " = " << qonet::format_double(c.value)
              << " (threshold " << qonet::format_double(c.threshold) << ", "
              << (c.pass ? "pass" : "fail") << ")\n";
  }
  if (!opts.out_dir.empty()) {
    std::cout << "wrote archive to " << opts.out_dir << "\n";
  }
  return kExitOk;
}

int do_verify(const CommonOpts& opts) {
  std::vector<qonet::CheckResult> checks;
  if (!opts.config_path.empty()) {
    const qonet::ExperimentConfig cfg = load_with_overrides(opts);
    checks = qonet::run_verify(cfg, opts.seed);
  } else {
    checks = qonet::run_verify_sweep(opts.seed, 50);
  }

  const std::string report = qonet::render_check_report(checks);
  std::cout << report;
  if (!opts.out_dir.empty()) {
    std::filesystem::create_directories(opts.out_dir);
    std::ofstream out(std::filesystem::path(opts.out_dir) /
                      "verify_report.csv");
    out << report;
    std::cout << "wrote " << opts.out_dir << "/verify_report.csv\n";
  }

  if (!qonet::all_pass(checks)) {
    std::cout << "verification: FAIL\n";
    return kExitVerification;
  }
  std::cout << "verification: PASS\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Direct-coupled quantum observer network synthesis and "
               "simulation"};
  app.set_version_flag("--version", qonet::kToolVersion);
  app.require_subcommand(1);

  CommonOpts opts;

  auto add_common = [&](CLI::App* cmd, bool config_required) {
    auto* config_opt =
        cmd->add_option("--config", opts.config_path, "experiment config file");
    if (config_required) config_opt->required();
    cmd->add_option("--out", opts.out_dir, "output directory");
    cmd->add_option("--seed", opts.seed, "random seed override")
        ->each([&](const std::string&) { opts.seed_given = true; });
  };

  CLI::App* synthesize =
      app.add_subcommand("synthesize", "build and certify the network");
  add_common(synthesize, true);

  CLI::App* simulate =
      app.add_subcommand("simulate", "propagate and emit trace tables");
  add_common(simulate, true);
  simulate->add_option("--t-max", opts.t_max, "grid end time override");
  simulate->add_option("--step", opts.step, "grid step override");
  simulate->add_option("--horizons", opts.horizons,
                       "time-average horizons override")
      ->delimiter(',');

  CLI::App* verify = app.add_subcommand(
      "verify", "run the invariant battery (random sweep without --config)");
  add_common(verify, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (synthesize->parsed()) return do_synthesize(opts);
    if (simulate->parsed()) return do_simulate(opts);
    if (verify->parsed()) return do_verify(opts);
  } catch (const qonet::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const qonet::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSynthesis;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitOk;
}
