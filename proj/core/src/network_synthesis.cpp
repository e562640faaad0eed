#include "qonet/network_synthesis.hpp"

#include <string>

#include "qonet/errors.hpp"

namespace qonet {

namespace {

Eigen::Matrix2d symplectic_unit() {
  Eigen::Matrix2d j;
  j << 0, 1, -1, 0;
  return j;
}

Eigen::MatrixXd block_diag_j(int blocks) {
  Eigen::MatrixXd theta = Eigen::MatrixXd::Zero(2 * blocks, 2 * blocks);
  const Eigen::Matrix2d j = symplectic_unit();
  for (int k = 0; k < blocks; ++k) {
    theta.block<2, 2>(2 * k, 2 * k) = j;
  }
  return theta;
}

}  // namespace

CouplingScheme CouplingScheme::from_plant(const PlantSpec& plant,
                                          const Eigen::Vector2d& alpha1) {
  plant.validate();
  CouplingScheme s;
  s.alpha1 = alpha1;
  s.alpha0 = plant.C_p.transpose();
  return s;
}

Eigen::VectorXd NetworkRealization::offset_state() const {
  const double a2 = alpha1.squaredNorm();
  const int n = observer_count();
  Eigen::VectorXd s(2 * n);
  for (int k = 0; k < n; ++k) {
    s.segment<2>(2 * k) = alpha1 / a2;
  }
  return s;
}

NetworkRealization NetworkRealization::unchecked(const Eigen::VectorXd& omega,
                                                 const Eigen::MatrixXd& R_o,
                                                 const Eigen::VectorXd& b,
                                                 const Eigen::Vector2d& alpha1) {
  NetworkRealization real;
  const int n = static_cast<int>(omega.size());
  real.omega = omega;
  real.R_o = R_o;
  real.Theta_o = block_diag_j(n);
  real.A_o = 2.0 * real.Theta_o * R_o;
  real.b = b;
  real.alpha1 = alpha1;
  real.C_o = Eigen::MatrixXd::Zero(n, 2 * n);
  for (int k = 0; k < n; ++k) {
    real.C_o.block<1, 2>(k, 2 * k) = alpha1.transpose();
  }
  return real;
}

Eigen::VectorXd synthesize_omegas(const ObserverGraph& g,
                                  const CouplingScheme& scheme) {
  if (scheme.alpha1.isZero(0.0)) {
    throw SynthesisError(SynthesisError::Kind::zero_alpha,
                         "alpha1 must be nonzero");
  }
  validate_graph(g);

  const ReducedGraph rg = reduce(g, scheme.alpha1_norm_sq());
  const int n = g.observer_count();
  Eigen::VectorXd omega = Eigen::VectorXd::Zero(n);
  for (const auto& [key, w] : rg.weights) {
    omega(key.first - 1) += w;
    omega(key.second - 1) += w;
  }
  for (const auto& [node, w] : rg.plant_attached) {
    omega(node - 1) += w;
  }
  return omega;
}

NetworkRealization build_realization(const ObserverGraph& g,
                                     const CouplingScheme& scheme) {
  NetworkRealization real;
  real.omega = synthesize_omegas(g, scheme);
  real.alpha1 = scheme.alpha1;
  real.reduced = reduce(g, scheme.alpha1_norm_sq());

  const int n = g.observer_count();
  const Eigen::Matrix2d j = symplectic_unit();
  const Eigen::Matrix2d coupling_block =
      scheme.alpha1 * scheme.alpha1.transpose();

  real.R_o = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) {
    real.R_o.block<2, 2>(2 * k, 2 * k) =
        real.omega(k) * Eigen::Matrix2d::Identity();
  }
  real.b = Eigen::VectorXd::Zero(2 * n);
  for (const auto& [key, mu] : g.edges()) {
    if (key.first == 0) {
      real.b.segment<2>(2 * (key.second - 1)) = -2.0 * mu * (j * scheme.alpha1);
    } else {
      const int r = key.first - 1;
      const int c = key.second - 1;
      real.R_o.block<2, 2>(2 * r, 2 * c) = -mu * coupling_block;
      real.R_o.block<2, 2>(2 * c, 2 * r) = -mu * coupling_block;
    }
  }

  real.Theta_o = block_diag_j(n);
  real.A_o = 2.0 * real.Theta_o * real.R_o;

  real.C_o = Eigen::MatrixXd::Zero(n, 2 * n);
  for (int k = 0; k < n; ++k) {
    real.C_o.block<1, 2>(k, 2 * k) = scheme.alpha1.transpose();
  }
  return real;
}

DefinitenessReport certify_positive_definite(const NetworkRealization& real) {
  DefinitenessReport report;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(real.R_o);
  report.lambda_min = solver.eigenvalues().minCoeff();
  report.lambda_max = solver.eigenvalues().maxCoeff();

  // Independent route: the N x N comparison matrix acting on per-oscillator
  // norms. Its smallest eigenvalue lower-bounds the quadratic form after a
  // Cauchy-Schwarz pass, and it decomposes as Laplacian + attachment
  // diagonal, which is positive definite exactly when the full graph is
  // connected.
  if (real.reduced.has_value()) {
    const Eigen::MatrixXd comparison = weighted_laplacian(*real.reduced) +
                                       plant_attachment_diag(*real.reduced);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> reduced_solver(comparison);
    report.reduced_lambda_min = reduced_solver.eigenvalues().minCoeff();
  } else {
    report.reduced_lambda_min = report.lambda_min;
  }

  const double threshold = 1e-10 * report.lambda_max;
  report.certified = report.lambda_min > threshold &&
                     report.reduced_lambda_min > threshold;
  if (!report.certified) {
    throw SynthesisError(
        SynthesisError::Kind::not_positive_definite,
        "R_o is not positive definite (lambda_min = " +
            std::to_string(report.lambda_min) + ", reduced lambda_min = " +
            std::to_string(report.reduced_lambda_min) +
            "); the graph is disconnected or the synthesis conditions were "
            "bypassed");
  }
  return report;
}

AugmentedSystem assemble_augmented(const PlantSpec& plant,
                                   const NetworkRealization& real) {
  if (!plant.r_p.isZero(0.0)) {
    throw SynthesisError(SynthesisError::Kind::nonzero_plant_hamiltonian,
                         "plant must have r_p = 0 for the constant-output "
                         "construction");
  }
  const int n = real.observer_count();
  AugmentedSystem aug;
  aug.A_a = Eigen::MatrixXd::Zero(2 * n + 1, 2 * n + 1);
  aug.A_a.block(1, 0, 2 * n, 1) = real.b;
  aug.A_a.block(1, 1, 2 * n, 2 * n) = real.A_o;

  aug.C_a = Eigen::MatrixXd::Zero(n + 1, 2 * n + 1);
  aug.C_a(0, 0) = 1.0;
  aug.C_a.block(1, 1, n, 2 * n) = real.C_o;
  return aug;
}

Eigen::VectorXd consensus_target(const NetworkRealization& real) {
  return real.C_o * real.offset_state();
}

}  // namespace qonet
