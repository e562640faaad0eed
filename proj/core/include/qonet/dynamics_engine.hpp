#pragma once

#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qonet/network_synthesis.hpp"

namespace qonet {

/// exp(A t) for a square real matrix with finite entries.
/// Throws SimulationError::Kind::non_finite otherwise.
Eigen::MatrixXd matrix_exp(const Eigen::MatrixXd& A, double t);

/// Largest |Re(lambda)| over the spectrum of A.
double spectrum_max_real(const Eigen::MatrixXd& A);

/// Operator 2-norm (largest singular value).
double operator_norm(const Eigen::MatrixXd& m);

/// ||exp(2At) - exp(At)^2|| / ||exp(At)||^2, a propagation consistency probe.
double semigroup_residual(const Eigen::MatrixXd& A, double t);

/// Uniform grid {0, step, 2*step, ..., ~t_max}.
std::vector<double> uniform_grid(double t_max, double step);

/// Propagator samples Phi(t_k) = exp(A t_k) on a time grid.
struct Propagator {
  std::vector<double> grid;
  std::vector<Eigen::MatrixXd> phi;

  std::size_t size() const { return grid.size(); }
};

/// Samples the flow of an arbitrary drift matrix. The grid must start at 0
/// and be strictly increasing (throws SimulationError::Kind::bad_grid).
Propagator propagate_matrix(const Eigen::MatrixXd& A,
                            const std::vector<double>& grid);

/// Samples the augmented-system flow Phi(t) = exp(A_a t).
Propagator propagate(const AugmentedSystem& aug,
                     const std::vector<double>& grid);

/// Output-coefficient traces and their running time-averages. traces[k] is a
/// (grid points) x (state dim) table whose row at t holds the coefficients
/// e_k C_a Phi(t), i.e. the expansion of output k over the initial state.
struct SimulationResult {
  std::vector<double> grid;
  std::vector<Eigen::MatrixXd> traces;
  std::vector<Eigen::MatrixXd> running_avg;
  std::map<std::string, double> residuals;
  std::vector<std::string> advisories;
  double drift_max_abs = 0.0;  ///< max |A_a entry|, drives the grid advisory.

  int output_rows() const { return static_cast<int>(traces.size()); }
};

/// Evaluates every output coefficient trace on the propagator grid and
/// records the plant-row constancy residual.
SimulationResult coefficient_traces(const AugmentedSystem& aug,
                                    const Propagator& prop);

/// (1/T) integral over [0, T] of C_a Phi(t), evaluated in closed form using
/// the invertibility of the observer drift: the observer block averages to
/// (1/T)(exp(A_o T) - I) A_o^{-1} and the plant column carries the constant
/// offset. Throws SimulationError::Kind::bad_grid for T <= 0 and
/// SynthesisError::Kind::singular_drift if A_o is singular.
Eigen::MatrixXd time_average_closed_form(const AugmentedSystem& aug, double T);

/// Fills result.running_avg with cumulative trapezoid averages of every
/// trace at every grid point. Appends a GridTooCoarse advisory when
/// max |A_a| * max step exceeds 1.
void time_average_quadrature(SimulationResult& result);

struct ConvergenceReport {
  std::vector<double> horizons;
  std::vector<double> deviations;  ///< D(T) per horizon: worst observer-row
                                   ///< distance of the average from e_1^T.
  double bound_constant = 0.0;     ///< K with D(T) <= K / T.
  bool within_bound = false;
};

/// Evaluates the time-averaged consensus deviation at each horizon and
/// compares it against the K/T envelope, with K assembled numerically from
/// the conditioning of R_o and the norms of the output and offset maps.
ConvergenceReport check_convergence(const AugmentedSystem& aug,
                                    const NetworkRealization& real,
                                    const std::vector<double>& horizons);

/// Max relative drift of the conserved quadratic form x^T R_o x along the
/// shifted flow sampled by `prop` (which must sample exp(A_o t)).
/// Throws SimulationError::Kind::zero_state when x0 = 0.
double check_hamiltonian_conservation(const NetworkRealization& real,
                                      const Eigen::VectorXd& x0,
                                      const Propagator& prop);

/// Max over the grid of ||Phi Theta Phi^T - Theta||_2 for an arbitrary
/// commutation matrix; the coefficient-level commutation preservation probe.
double symplectic_residual(const Eigen::MatrixXd& theta,
                           const Propagator& prop);

/// symplectic_residual against the realization's Theta_o.
double check_symplectic_ccr(const NetworkRealization& real,
                            const Propagator& prop);

/// Max over the grid of ||Phi(t)||_2 / sqrt(lambda_max(R_o)/lambda_min(R_o)).
/// At most 1 + rounding for any flow generated by 2 Theta_o R_o with
/// R_o > 0.
double check_norm_bound(const NetworkRealization& real,
                        const Propagator& prop);

}  // namespace qonet
