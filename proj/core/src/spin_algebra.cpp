#include "qonet/spin_algebra.hpp"

#include <complex>

#include "qonet/errors.hpp"

namespace qonet {

using std::complex;

void PlantSpec::validate() const {
  if (C_p.isZero(0.0)) {
    throw ConfigError(ConfigError::Kind::validation,
                      "plant: C_p must be nonzero (nothing to estimate)");
  }
}

PauliTriple pauli_matrices() {
  const complex<double> i(0.0, 1.0);
  PauliTriple p;
  p.sigma1 << 0, 1, 1, 0;
  p.sigma2 << 0, -i, i, 0;
  p.sigma3 << 1, 0, 0, -1;
  return p;
}

Eigen::Matrix3d theta_map(const Eigen::Vector3d& beta) {
  Eigen::Matrix3d m;
  m << 0, beta(2), -beta(1),
      -beta(2), 0, beta(0),
      beta(1), -beta(0), 0;
  return m;
}

Eigen::Matrix3d plant_drift(const PlantSpec& spec) {
  return -2.0 * theta_map(spec.r_p);
}

double theta_identities_residual(const Eigen::Vector3d& beta,
                                 const Eigen::Vector3d& gamma) {
  const Eigen::Matrix3d tb = theta_map(beta);
  const Eigen::Matrix3d tg = theta_map(gamma);

  const double r1 = (tb * gamma + tg * beta).cwiseAbs().maxCoeff();
  const double r2 = (tb * beta).cwiseAbs().maxCoeff();
  const Eigen::Matrix3d prod_identity =
      gamma * beta.transpose() - beta.dot(gamma) * Eigen::Matrix3d::Identity();
  const double r3 = (tb * tg - prod_identity).cwiseAbs().maxCoeff();
  const double r4 =
      (theta_map(tb * gamma) - (tb * tg - tg * tb)).cwiseAbs().maxCoeff();

  return std::max({r1, r2, r3, r4});
}

double verify_zp_invariance(const PlantSpec& spec) {
  return (spec.C_p * theta_map(spec.C_p.transpose())).norm();
}

double pauli_commutator_residual() {
  const PauliTriple p = pauli_matrices();
  const Eigen::Matrix2cd sigma[3] = {p.sigma1, p.sigma2, p.sigma3};
  const complex<double> two_i(0.0, 2.0);

  // Levi-Civita structure constants.
  auto eps = [](int i, int j, int k) -> double {
    if (i == j || j == k || i == k) return 0.0;
    if ((i == 0 && j == 1 && k == 2) || (i == 1 && j == 2 && k == 0) ||
        (i == 2 && j == 0 && k == 1)) {
      return 1.0;
    }
    return -1.0;
  };

  double worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      Eigen::Matrix2cd expected = Eigen::Matrix2cd::Zero();
      for (int k = 0; k < 3; ++k) {
        expected += two_i * eps(i, j, k) * sigma[k];
      }
      const Eigen::Matrix2cd commutator =
          sigma[i] * sigma[j] - sigma[j] * sigma[i];
      worst = std::max(worst, (commutator - expected).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

}  // namespace qonet
