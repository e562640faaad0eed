#include "qonet/verification.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "qonet/dynamics_engine.hpp"
#include "qonet/errors.hpp"
#include "qonet/graph_generator.hpp"
#include "qonet/spin_algebra.hpp"

namespace qonet {

namespace {

double draw_uniform(std::mt19937_64& rng, double lo, double hi) {
  const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + unit * (hi - lo);
}

Eigen::Vector3d draw_vec3(std::mt19937_64& rng, double lo, double hi) {
  return {draw_uniform(rng, lo, hi), draw_uniform(rng, lo, hi),
          draw_uniform(rng, lo, hi)};
}

CheckResult checked(const std::string& name, double value, double threshold) {
  return {name, value, threshold, value <= threshold, false};
}

}  // namespace

std::vector<CheckResult> verify_algebra(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<CheckResult> out;

  out.push_back(checked("pauli_commutators", pauli_commutator_residual(), 0.0));

  double worst_identity = 0.0;
  double worst_skew = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const Eigen::Vector3d beta = draw_vec3(rng, -10.0, 10.0);
    const Eigen::Vector3d gamma = draw_vec3(rng, -10.0, 10.0);
    worst_identity =
        std::max(worst_identity, theta_identities_residual(beta, gamma));
    const Eigen::Matrix3d t = theta_map(beta);
    worst_skew =
        std::max(worst_skew, (t + t.transpose()).cwiseAbs().maxCoeff());
  }
  out.push_back(checked("theta_identities", worst_identity, 1e-10));
  out.push_back(checked("theta_skew_symmetry", worst_skew, 0.0));

  double worst_invariance = 0.0;
  for (int k = 0; k < 100; ++k) {
    PlantSpec plant;
    plant.C_p = draw_vec3(rng, -1.0, 1.0).transpose();
    if (plant.C_p.isZero(0.0)) continue;
    worst_invariance = std::max(worst_invariance, verify_zp_invariance(plant));
  }
  out.push_back(checked("output_invariance", worst_invariance, 1e-14));
  return out;
}

std::vector<CheckResult> verify_realization_checks(
    const NetworkRealization& real, std::uint64_t seed) {
  std::vector<CheckResult> out;
  const int n2 = static_cast<int>(real.R_o.rows());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(real.R_o);
  const double lambda_min = solver.eigenvalues().minCoeff();
  const double lambda_max = solver.eigenvalues().maxCoeff();
  out.push_back({"definiteness_lambda_min", lambda_min,
                 1e-10 * lambda_max, lambda_min > 1e-10 * lambda_max, false});
  if (real.reduced.has_value()) {
    const Eigen::MatrixXd comparison = weighted_laplacian(*real.reduced) +
                                       plant_attachment_diag(*real.reduced);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> reduced(comparison);
    const double reduced_min = reduced.eigenvalues().minCoeff();
    out.push_back({"definiteness_reduced_route", reduced_min,
                   1e-10 * lambda_max, reduced_min > 1e-10 * lambda_max,
                   false});
  }

  // Theta_o^-1 A_o = 2 R_o must be symmetric even when A_o itself is not.
  const Eigen::MatrixXd twice_r =
      real.Theta_o.transpose() * real.A_o;  // Theta_o^-1 = Theta_o^T
  out.push_back(checked(
      "theta_inverse_drift_symmetry",
      (twice_r - twice_r.transpose()).cwiseAbs().maxCoeff(),
      1e-13 * std::max(1.0, twice_r.cwiseAbs().maxCoeff())));

  const double drift_norm = operator_norm(real.A_o);
  out.push_back(checked("spectrum_imaginary_axis",
                        spectrum_max_real(real.A_o),
                        1e-10 * std::max(1.0, drift_norm)));

  const Propagator flow = propagate_matrix(real.A_o, uniform_grid(10.0, 0.1));
  out.push_back(checked("commutation_preservation",
                        check_symplectic_ccr(real, flow), 1e-8));

  std::mt19937_64 rng(seed);
  Eigen::VectorXd x0(n2);
  for (int k = 0; k < n2; ++k) x0(k) = draw_uniform(rng, -1.0, 1.0);
  if (x0.isZero(0.0)) x0(0) = 1.0;
  out.push_back(checked("hamiltonian_conservation",
                        check_hamiltonian_conservation(real, x0, flow), 1e-8));

  out.push_back(checked("flow_norm_bound", check_norm_bound(real, flow),
                        1.0 + 1e-8));

  out.push_back(checked("propagation_consistency",
                        semigroup_residual(real.A_o, 1.0), 1e-8));

  // Averaged-flow identity: (e^{A_o T} - I) A_o^{-1} equals
  // (1/2)(e^{A_o T} - I) R_o^{-1} Theta_o^{-1} when A_o = 2 Theta_o R_o.
  if (lambda_min > 1e-10 * lambda_max) {
    const double T = 10.0;
    const Eigen::MatrixXd flow_T = matrix_exp(real.A_o, T);
    const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(n2, n2);
    const Eigen::MatrixXd direct =
        real.A_o.fullPivLu().solve(flow_T - identity);
    const Eigen::MatrixXd factored = 0.5 * (flow_T - identity) *
                                     real.R_o.fullPivLu().inverse() *
                                     real.Theta_o.transpose();
    out.push_back(checked("averaged_flow_identity",
                          operator_norm(direct - factored),
                          1e-9 * std::max(1.0, operator_norm(direct))));
  }

  return out;
}

std::vector<CheckResult> verify_network(const PlantSpec& plant,
                                        const ObserverGraph& graph,
                                        const Eigen::Vector2d& alpha1,
                                        std::uint64_t seed) {
  std::vector<CheckResult> out;

  out.push_back(checked("plant_output_invariance",
                        verify_zp_invariance(plant),
                        1e-14 * plant.C_p.squaredNorm()));

  const CouplingScheme scheme = CouplingScheme::from_plant(plant, alpha1);
  const NetworkRealization real = build_realization(graph, scheme);

  auto realization_rows = verify_realization_checks(real, seed);
  out.insert(out.end(), realization_rows.begin(), realization_rows.end());

  out.push_back(checked(
      "consensus_offset",
      (consensus_target(real) -
       Eigen::VectorXd::Ones(real.observer_count())).cwiseAbs().maxCoeff(),
      1e-12));

  const AugmentedSystem aug = assemble_augmented(plant, real);
  const Propagator prop = propagate(aug, uniform_grid(10.0, 0.1));
  const SimulationResult traces = coefficient_traces(aug, prop);
  out.push_back(checked("plant_row_constancy",
                        traces.residuals.at("plant_row_constancy"), 1e-8));

  const ConvergenceReport conv =
      check_convergence(aug, real, {100.0, 200.0, 400.0, 800.0});
  double worst_scaled = 0.0;
  for (std::size_t k = 0; k < conv.horizons.size(); ++k) {
    worst_scaled =
        std::max(worst_scaled, conv.deviations[k] * conv.horizons[k]);
  }
  out.push_back(checked("consensus_deviation_envelope", worst_scaled,
                        conv.bound_constant));
  return out;
}

std::vector<CheckResult> verify_sweep(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::vector<CheckResult> out;

  double min_lambda = std::numeric_limits<double>::infinity();
  double worst_sym = 0.0;
  double worst_ham = 0.0;
  double worst_norm = 0.0;
  int certified = 0;

  for (int trial = 0; trial < count; ++trial) {
    const int observers = 1 + static_cast<int>(rng() % 8);
    const ObserverGraph graph =
        make_random_connected(observers, rng(), 0.1, 2.0);
    Eigen::Vector2d alpha1;
    alpha1 << 1.0, 0.0;
    PlantSpec plant;
    plant.C_p << 1.0, 0.0, 0.0;

    const NetworkRealization real =
        build_realization(graph, CouplingScheme::from_plant(plant, alpha1));
    const DefinitenessReport report = certify_positive_definite(real);
    min_lambda = std::min(min_lambda, report.lambda_min);
    ++certified;

    const Propagator flow =
        propagate_matrix(real.A_o, uniform_grid(10.0, 0.25));
    worst_sym = std::max(worst_sym, check_symplectic_ccr(real, flow));
    Eigen::VectorXd x0(real.R_o.rows());
    for (Eigen::Index k = 0; k < x0.size(); ++k) {
      x0(k) = draw_uniform(rng, -1.0, 1.0);
    }
    if (x0.isZero(0.0)) x0(0) = 1.0;
    worst_ham =
        std::max(worst_ham, check_hamiltonian_conservation(real, x0, flow));
    worst_norm = std::max(worst_norm, check_norm_bound(real, flow));
  }

  out.push_back({"sweep_certified_count", static_cast<double>(certified),
                 static_cast<double>(count),
                 certified == count, false});
  out.push_back({"sweep_lambda_min", min_lambda, 0.0, min_lambda > 0.0,
                 false});
  out.push_back(checked("sweep_commutation_preservation", worst_sym, 1e-8));
  out.push_back(checked("sweep_hamiltonian_conservation", worst_ham, 1e-8));
  out.push_back(checked("sweep_flow_norm_bound", worst_norm, 1.0 + 1e-8));
  return out;
}

}  // namespace qonet
