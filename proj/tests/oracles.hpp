// Test-only reference implementations, kept independent of the library's
// computational paths so they can serve as oracles.
#pragma once

#include <random>

#include <Eigen/Dense>

#include "qonet/graph_generator.hpp"
#include "qonet/network_synthesis.hpp"

namespace qonet_test {

/// Truncated power series for exp(A t). Convergent and accurate to ~1e-15
/// for ||A t|| <= 1 with the default term count.
inline Eigen::MatrixXd power_series_exp(const Eigen::MatrixXd& A, double t,
                                        int terms = 30) {
  const Eigen::MatrixXd at = A * t;
  Eigen::MatrixXd sum = Eigen::MatrixXd::Identity(A.rows(), A.cols());
  Eigen::MatrixXd term = sum;
  for (int k = 1; k <= terms; ++k) {
    term = term * at / static_cast<double>(k);
    sum += term;
  }
  return sum;
}

/// Composite Simpson average (1/T) integral of C_a exp(A_a t) over [0, T].
/// Steps the coefficient table with a fixed one-step propagator; the step
/// count is forced even.
inline Eigen::MatrixXd simpson_average(const qonet::AugmentedSystem& aug,
                                       double T, double step) {
  long n = std::lround(T / step);
  if (n % 2 != 0) ++n;
  const double h = T / static_cast<double>(n);

  const Eigen::MatrixXd one_step = power_series_exp(aug.A_a, h);
  Eigen::MatrixXd coef = aug.C_a;
  Eigen::MatrixXd weighted = coef;  // weight 1 at t = 0
  for (long k = 1; k < n; ++k) {
    coef = coef * one_step;
    weighted += (k % 2 == 1 ? 4.0 : 2.0) * coef;
  }
  coef = coef * one_step;
  weighted += coef;  // weight 1 at t = T
  return weighted * (h / 3.0) / T;
}

/// Uniform double in [lo, hi] drawn with a fixed reduction, so expected
/// values frozen in the tests never depend on library internals.
inline double draw_uniform(std::mt19937_64& rng, double lo, double hi) {
  const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + unit * (hi - lo);
}

inline Eigen::VectorXd draw_vector(std::mt19937_64& rng, int size, double lo,
                                   double hi) {
  Eigen::VectorXd v(size);
  for (int k = 0; k < size; ++k) v(k) = draw_uniform(rng, lo, hi);
  return v;
}

/// The five-observer complete-graph example system: C_p = [1 0 0],
/// alpha1 = [1 0], every coupling weight 1.
struct Complete5 {
  qonet::PlantSpec plant;
  qonet::NetworkRealization realization;
  qonet::AugmentedSystem augmented;
};

inline Complete5 make_complete5() {
  Complete5 sys;
  sys.plant.C_p << 1, 0, 0;
  const qonet::CouplingScheme scheme = qonet::CouplingScheme::from_plant(
      sys.plant, Eigen::Vector2d(1.0, 0.0));
  sys.realization =
      qonet::build_realization(qonet::make_complete(5, 1.0), scheme);
  sys.augmented = qonet::assemble_augmented(sys.plant, sys.realization);
  return sys;
}

/// The 11x11 augmented drift of the five-observer complete-graph example,
/// entry for entry.
inline Eigen::MatrixXd expected_complete5_drift() {
  Eigen::MatrixXd m(11, 11);
  m << 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
      0, 0, 10, 0, 0, 0, 0, 0, 0, 0, 0,
      2, -10, 0, 2, 0, 2, 0, 2, 0, 2, 0,
      0, 0, 0, 0, 10, 0, 0, 0, 0, 0, 0,
      2, 2, 0, -10, 0, 2, 0, 2, 0, 2, 0,
      0, 0, 0, 0, 0, 0, 10, 0, 0, 0, 0,
      2, 2, 0, 2, 0, -10, 0, 2, 0, 2, 0,
      0, 0, 0, 0, 0, 0, 0, 0, 10, 0, 0,
      2, 2, 0, 2, 0, 2, 0, -10, 0, 2, 0,
      0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 10,
      2, 2, 0, 2, 0, 2, 0, 2, 0, -10, 0;
  return m;
}

}  // namespace qonet_test
