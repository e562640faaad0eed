#pragma once

#include <Eigen/Dense>

namespace qonet {

/// Single-qubit plant description: a linear Hamiltonian coefficient vector
/// r_p and the output row C_p selecting the spin component to estimate.
struct PlantSpec {
  Eigen::Vector3d r_p = Eigen::Vector3d::Zero();
  Eigen::RowVector3d C_p = Eigen::RowVector3d::Zero();

  /// Throws ConfigError if C_p is identically zero.
  void validate() const;
};

/// The three Pauli matrices with exact {0, +-1, +-i} entries.
struct PauliTriple {
  Eigen::Matrix2cd sigma1;
  Eigen::Matrix2cd sigma2;
  Eigen::Matrix2cd sigma3;
};

PauliTriple pauli_matrices();

/// Skew-symmetric cross-term map:
///   theta_map(b) = [[0, b3, -b2], [-b3, 0, b1], [b2, -b1, 0]].
Eigen::Matrix3d theta_map(const Eigen::Vector3d& beta);

/// Plant drift A_p = -2 * theta_map(r_p).
Eigen::Matrix3d plant_drift(const PlantSpec& spec);

/// Maximum absolute residual over the four algebraic identities of the
/// theta map:
///   theta(b)g + theta(g)b = 0
///   theta(b)b = 0
///   theta(b)theta(g) = g b^T - (b . g) I
///   theta(theta(b)g) = theta(b)theta(g) - theta(g)theta(b)
/// Zero in exact arithmetic; rounding only in floating point.
double theta_identities_residual(const Eigen::Vector3d& beta,
                                 const Eigen::Vector3d& gamma);

/// ||C_p * theta_map(C_p^T)||: the coefficient-level certificate that the
/// estimated plant output stays constant under plant-observer coupling
/// aligned with C_p^T. Always zero up to rounding.
double verify_zp_invariance(const PlantSpec& spec);

/// Max over all 9 (i, j) pairs of ||[sigma_i, sigma_j] - 2i sum_k eps_ijk sigma_k||.
/// Exactly zero: all entries involved are small Gaussian integers.
double pauli_commutator_residual();

}  // namespace qonet
