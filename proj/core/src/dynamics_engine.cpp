#include "qonet/dynamics_engine.hpp"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "qonet/errors.hpp"

namespace qonet {

Eigen::MatrixXd matrix_exp(const Eigen::MatrixXd& A, double t) {
  if (!A.allFinite() || !std::isfinite(t)) {
    throw SimulationError(SimulationError::Kind::non_finite,
                          "matrix_exp: non-finite input");
  }
  return (A * t).exp();
}

double spectrum_max_real(const Eigen::MatrixXd& A) {
  Eigen::EigenSolver<Eigen::MatrixXd> solver(A, /*computeEigenvectors=*/false);
  return solver.eigenvalues().real().cwiseAbs().maxCoeff();
}

double operator_norm(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  return Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues()(0);
}

double semigroup_residual(const Eigen::MatrixXd& A, double t) {
  const Eigen::MatrixXd half = matrix_exp(A, t);
  const Eigen::MatrixXd full = matrix_exp(A, 2.0 * t);
  const double scale = operator_norm(half);
  return operator_norm(full - half * half) / (scale * scale);
}

std::vector<double> uniform_grid(double t_max, double step) {
  if (!(t_max > 0.0) || !(step > 0.0)) {
    throw SimulationError(SimulationError::Kind::bad_grid,
                          "uniform_grid: t_max and step must be positive");
  }
  const int n = static_cast<int>(std::round(t_max / step));
  std::vector<double> grid(n + 1);
  for (int k = 0; k <= n; ++k) grid[k] = k * step;
  return grid;
}

namespace {

void check_grid(const std::vector<double>& grid) {
  if (grid.empty() || grid.front() != 0.0) {
    throw SimulationError(SimulationError::Kind::bad_grid,
                          "grid must start at t = 0");
  }
  for (std::size_t k = 1; k < grid.size(); ++k) {
    if (!(grid[k] > grid[k - 1])) {
      throw SimulationError(SimulationError::Kind::bad_grid,
                            "grid must be strictly increasing");
    }
  }
}

}  // namespace

Propagator propagate_matrix(const Eigen::MatrixXd& A,
                            const std::vector<double>& grid) {
  check_grid(grid);
  Propagator prop;
  prop.grid = grid;
  prop.phi.reserve(grid.size());
  const Eigen::MatrixXd identity =
      Eigen::MatrixXd::Identity(A.rows(), A.cols());
  for (double t : grid) {
    // Each sample is an independent exponential; t = 0 is pinned to the
    // identity rather than evaluated.
    prop.phi.push_back(t == 0.0 ? identity : matrix_exp(A, t));
  }
  return prop;
}

Propagator propagate(const AugmentedSystem& aug,
                     const std::vector<double>& grid) {
  return propagate_matrix(aug.A_a, grid);
}

SimulationResult coefficient_traces(const AugmentedSystem& aug,
                                    const Propagator& prop) {
  const int rows = static_cast<int>(aug.C_a.rows());
  const int dim = aug.state_dim();
  const int samples = static_cast<int>(prop.size());

  SimulationResult result;
  result.grid = prop.grid;
  result.drift_max_abs = aug.A_a.cwiseAbs().maxCoeff();
  result.traces.assign(rows, Eigen::MatrixXd::Zero(samples, dim));

  for (int s = 0; s < samples; ++s) {
    const Eigen::MatrixXd coef = aug.C_a * prop.phi[s];
    for (int k = 0; k < rows; ++k) {
      result.traces[k].row(s) = coef.row(k);
    }
  }

  // Plant-row constancy: the first output row must stay e_1^T.
  Eigen::RowVectorXd e1 = Eigen::RowVectorXd::Zero(dim);
  e1(0) = 1.0;
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    worst = std::max(worst, (result.traces[0].row(s) - e1).norm());
  }
  result.residuals["plant_row_constancy"] = worst;
  return result;
}

Eigen::MatrixXd time_average_closed_form(const AugmentedSystem& aug,
                                         double T) {
  if (!(T > 0.0)) {
    throw SimulationError(SimulationError::Kind::bad_grid,
                          "time_average_closed_form: T must be positive");
  }
  const int dim = aug.state_dim();
  const int n2 = dim - 1;
  const Eigen::MatrixXd drift = aug.A_a.block(1, 1, n2, n2);
  const Eigen::VectorXd coupling = aug.A_a.block(1, 0, n2, 1);
  const Eigen::MatrixXd output = aug.C_a.block(1, 1, aug.C_a.rows() - 1, n2);

  Eigen::FullPivLU<Eigen::MatrixXd> lu(drift);
  if (!lu.isInvertible()) {
    throw SynthesisError(SynthesisError::Kind::singular_drift,
                         "observer drift is singular; the realization was "
                         "not certified");
  }

  // Offset state: drift * s + coupling = 0 by the resonance conditions.
  const Eigen::VectorXd offset = lu.solve(-coupling);

  // Average of the observer flow over [0, T]. The drift inverse commutes
  // with exp(drift T) - I, so a single solve suffices.
  const Eigen::MatrixXd flow_avg =
      lu.solve(matrix_exp(drift, T) - Eigen::MatrixXd::Identity(n2, n2)) / T;

  const Eigen::MatrixXd out_avg = output * flow_avg;

  Eigen::MatrixXd avg = Eigen::MatrixXd::Zero(aug.C_a.rows(), dim);
  avg(0, 0) = 1.0;
  avg.block(1, 0, out_avg.rows(), 1) = output * offset - out_avg * offset;
  avg.block(1, 1, out_avg.rows(), n2) = out_avg;
  return avg;
}

void time_average_quadrature(SimulationResult& result) {
  const auto& grid = result.grid;
  const int samples = static_cast<int>(grid.size());

  double max_step = 0.0;
  for (int s = 1; s < samples; ++s) {
    max_step = std::max(max_step, grid[s] - grid[s - 1]);
  }
  if (result.drift_max_abs * max_step > 1.0) {
    result.advisories.push_back(
        "GridTooCoarse: max |A_a| * step = " +
        std::to_string(result.drift_max_abs * max_step) +
        " > 1; running averages may be inaccurate");
  }

  result.running_avg.clear();
  result.running_avg.reserve(result.traces.size());
  for (const Eigen::MatrixXd& trace : result.traces) {
    Eigen::MatrixXd avg = trace;
    if (samples > 1) {
      Eigen::RowVectorXd cumulative = Eigen::RowVectorXd::Zero(trace.cols());
      for (int s = 1; s < samples; ++s) {
        const double h = grid[s] - grid[s - 1];
        cumulative += 0.5 * h * (trace.row(s) + trace.row(s - 1));
        avg.row(s) = cumulative / grid[s];
      }
    }
    result.running_avg.push_back(std::move(avg));
  }
}

ConvergenceReport check_convergence(const AugmentedSystem& aug,
                                    const NetworkRealization& real,
                                    const std::vector<double>& horizons) {
  ConvergenceReport report;
  report.horizons = horizons;

  const int dim = aug.state_dim();
  Eigen::RowVectorXd e1 = Eigen::RowVectorXd::Zero(dim);
  e1(0) = 1.0;

  for (double T : horizons) {
    const Eigen::MatrixXd avg = time_average_closed_form(aug, T);
    double worst = 0.0;
    for (Eigen::Index k = 1; k < avg.rows(); ++k) {
      worst = std::max(worst, (avg.row(k) - e1).norm());
    }
    report.deviations.push_back(worst);
  }

  // Envelope constant: the averaged observer flow is bounded by
  //   (1/2T)(sqrt(kappa) + 1) ||R_o^-1 Theta_o^-1||
  // and enters the deviation through C_o and the offset column.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(real.R_o);
  const double kappa =
      solver.eigenvalues().maxCoeff() / solver.eigenvalues().minCoeff();
  const double inv_norm = operator_norm(
      real.R_o.fullPivLu().inverse() * real.Theta_o.transpose());
  const Eigen::VectorXd offset = real.offset_state();
  report.bound_constant = 0.5 * (std::sqrt(kappa) + 1.0) * inv_norm *
                          operator_norm(real.C_o) *
                          std::sqrt(1.0 + offset.squaredNorm());

  report.within_bound = true;
  for (std::size_t k = 0; k < horizons.size(); ++k) {
    if (report.deviations[k] > report.bound_constant / horizons[k]) {
      report.within_bound = false;
    }
  }
  return report;
}

double check_hamiltonian_conservation(const NetworkRealization& real,
                                      const Eigen::VectorXd& x0,
                                      const Propagator& prop) {
  if (x0.isZero(0.0)) {
    throw SimulationError(SimulationError::Kind::zero_state,
                          "hamiltonian conservation needs a nonzero state");
  }
  const double reference = x0.dot(real.R_o * x0);
  double worst = 0.0;
  for (const Eigen::MatrixXd& phi : prop.phi) {
    const Eigen::VectorXd xt = phi * x0;
    worst = std::max(worst,
                     std::abs(xt.dot(real.R_o * xt) - reference) /
                         std::abs(reference));
  }
  return worst;
}

double symplectic_residual(const Eigen::MatrixXd& theta,
                           const Propagator& prop) {
  double worst = 0.0;
  for (const Eigen::MatrixXd& phi : prop.phi) {
    worst =
        std::max(worst, operator_norm(phi * theta * phi.transpose() - theta));
  }
  return worst;
}

double check_symplectic_ccr(const NetworkRealization& real,
                            const Propagator& prop) {
  return symplectic_residual(real.Theta_o, prop);
}

double check_norm_bound(const NetworkRealization& real,
                        const Propagator& prop) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(real.R_o);
  const double bound = std::sqrt(solver.eigenvalues().maxCoeff() /
                                 solver.eigenvalues().minCoeff());
  double worst = 0.0;
  for (const Eigen::MatrixXd& phi : prop.phi) {
    worst = std::max(worst, operator_norm(phi) / bound);
  }
  return worst;
}

}  // namespace qonet
