#pragma once

#include <optional>

#include <Eigen/Dense>

#include "qonet/observer_graph.hpp"
#include "qonet/spin_algebra.hpp"

namespace qonet {

/// Coupling directions shared by every edge of the network: alpha1 for
/// observer-observer couplings, alpha0 = C_p^T for the plant couplings.
struct CouplingScheme {
  Eigen::Vector2d alpha1 = Eigen::Vector2d::Zero();
  Eigen::Vector3d alpha0 = Eigen::Vector3d::Zero();

  static CouplingScheme from_plant(const PlantSpec& plant,
                                   const Eigen::Vector2d& alpha1);

  double alpha1_norm_sq() const { return alpha1.squaredNorm(); }
};

/// Synthesized observer network on 2N oscillator coordinates ordered
/// [q_1; p_1; ...; q_N; p_N].
struct NetworkRealization {
  Eigen::VectorXd omega;    ///< N oscillator frequencies, all positive.
  Eigen::MatrixXd R_o;      ///< 2N x 2N symmetric Hamiltonian matrix.
  Eigen::MatrixXd Theta_o;  ///< 2N x 2N block diagonal of J = [[0,1],[-1,0]].
  Eigen::MatrixXd A_o;      ///< Drift, = 2 * Theta_o * R_o.
  Eigen::VectorXd b;        ///< 2N plant-coupling column.
  Eigen::MatrixXd C_o;      ///< N x 2N block-diagonal output map.
  Eigen::Vector2d alpha1 = Eigen::Vector2d::Zero();

  /// Reduced graph the realization was synthesized from; absent for
  /// unchecked hand-built realizations.
  std::optional<ReducedGraph> reduced;

  int observer_count() const { return static_cast<int>(omega.size()); }

  /// The constant state offset that maps the plant output into every
  /// observer: one alpha1 block per oscillator, scaled by 1/||alpha1||^2.
  Eigen::VectorXd offset_state() const;

  /// Wraps raw matrices without any synthesis conditions. Theta_o is built
  /// from the block count; A_o is recomputed as 2*Theta_o*R_o. Intended for
  /// experiments and negative controls; certification and simulation checks
  /// still run against it.
  static NetworkRealization unchecked(const Eigen::VectorXd& omega,
                                      const Eigen::MatrixXd& R_o,
                                      const Eigen::VectorXd& b,
                                      const Eigen::Vector2d& alpha1);
};

/// Reduced coefficient system on [z_p; x_o]: first row of A_a is zero, the
/// rest is [b | A_o]. C_a stacks e_1^T over [0 | C_o].
struct AugmentedSystem {
  Eigen::MatrixXd A_a;  ///< (2N+1) x (2N+1).
  Eigen::MatrixXd C_a;  ///< (N+1) x (2N+1).

  int observer_count() const {
    return static_cast<int>(C_a.rows()) - 1;
  }
  int state_dim() const { return static_cast<int>(A_a.rows()); }
};

/// Resonance frequencies: omega_j = ||alpha1||^2 * (sum of observer-edge
/// weights at j, plus the plant-edge weight when j is attached). Positive
/// for every node of a connected graph.
Eigen::VectorXd synthesize_omegas(const ObserverGraph& g,
                                  const CouplingScheme& scheme);

/// Assembles the full realization: R_o blockwise (omega_j I on the diagonal,
/// -mu_ij alpha1 alpha1^T on observer edges), A_o = 2 Theta_o R_o, the
/// plant-coupling column b (block -2 mu_0j J alpha1 at attached nodes), and
/// the output map C_o with alpha1^T blocks.
NetworkRealization build_realization(const ObserverGraph& g,
                                     const CouplingScheme& scheme);

struct DefinitenessReport {
  double lambda_min = 0.0;          ///< Smallest eigenvalue of R_o.
  double lambda_max = 0.0;          ///< Largest eigenvalue of R_o.
  double reduced_lambda_min = 0.0;  ///< Smallest eigenvalue of the N x N
                                    ///< comparison matrix (Laplacian +
                                    ///< plant-attachment diagonal).
  bool certified = false;

  double condition() const { return lambda_max / lambda_min; }
};

/// Certifies R_o > 0 two ways: directly via lambda_min(R_o), and through the
/// N x N comparison matrix obtained from per-oscillator norms. Throws
/// SynthesisError::Kind::not_positive_definite when either route fails.
DefinitenessReport certify_positive_definite(const NetworkRealization& real);

/// Builds the augmented coefficient system on [z_p; x_o]. The plant must
/// have r_p = 0; anything else throws
/// SynthesisError::Kind::nonzero_plant_hamiltonian.
AugmentedSystem assemble_augmented(const PlantSpec& plant,
                                   const NetworkRealization& real);

/// C_o applied to the offset state: the all-ones vector up to rounding.
/// This is the steady component that carries the plant output into every
/// observer output.
Eigen::VectorXd consensus_target(const NetworkRealization& real);

}  // namespace qonet
