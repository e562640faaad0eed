#pragma once

#include <cstdint>
#include <vector>

#include "qonet/check_result.hpp"
#include "qonet/network_synthesis.hpp"

namespace qonet {

/// Operator-algebra battery: Pauli commutation table, the theta-map
/// identities over random draws, and the output-invariance certificate over
/// random output rows. Deterministic for a fixed seed.
std::vector<CheckResult> verify_algebra(std::uint64_t seed);

/// Dynamical battery for one hand-built realization: definiteness of R_o
/// (both certificate routes when a reduced graph is attached), symmetry of
/// Theta_o^-1 A_o, spectrum on the imaginary axis, commutation preservation,
/// Hamiltonian conservation, the flow norm bound, a propagation consistency
/// probe, and the averaged-flow integral identity. Failures become report
/// rows; nothing throws.
std::vector<CheckResult> verify_realization_checks(
    const NetworkRealization& real, std::uint64_t seed);

/// Full battery for a synthesized network: algebra certificate for the
/// plant, realization checks, consensus offset, plant-row constancy, and the
/// deviation envelope D(T) <= K/T.
std::vector<CheckResult> verify_network(const PlantSpec& plant,
                                        const ObserverGraph& graph,
                                        const Eigen::Vector2d& alpha1,
                                        std::uint64_t seed);

/// Sweep over `count` random connected graphs (observers 1..8, weights in
/// [0.1, 2]); aggregates the worst residual of each kind.
std::vector<CheckResult> verify_sweep(std::uint64_t seed, int count);

}  // namespace qonet
