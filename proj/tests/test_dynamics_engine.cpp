#include <cmath>
#include <random>

#include <doctest.h>

#include "oracles.hpp"
#include "qonet/dynamics_engine.hpp"
#include "qonet/errors.hpp"
#include "qonet/graph_generator.hpp"

using namespace qonet;

namespace {

Eigen::Matrix2d rotation_generator() {
  Eigen::Matrix2d two_j;
  two_j << 0, 2, -2, 0;
  return two_j;
}

}  // namespace

TEST_CASE("matrix_exp basics") {
  SUBCASE("zero drift gives the identity") {
    CHECK(matrix_exp(Eigen::MatrixXd::Zero(4, 4), 3.7) ==
          Eigen::MatrixXd::Identity(4, 4));
  }
  SUBCASE("planar rotation closed form") {
    for (double t : {0.0, 0.3, 1.7, 9.1}) {
      Eigen::Matrix2d expected;
      expected << std::cos(2 * t), std::sin(2 * t), -std::sin(2 * t),
          std::cos(2 * t);
      CHECK((matrix_exp(rotation_generator(), t) - expected)
                .cwiseAbs()
                .maxCoeff() <= 1e-13);
    }
  }
  SUBCASE("non-finite input is rejected") {
    Eigen::MatrixXd bad = Eigen::MatrixXd::Zero(2, 2);
    bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(matrix_exp(bad, 1.0), SimulationError);
    CHECK_THROWS_AS(
        matrix_exp(Eigen::MatrixXd::Identity(2, 2),
                   std::numeric_limits<double>::infinity()),
        SimulationError);
  }
}

TEST_CASE("matrix_exp agrees with the power-series oracle") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 25; ++trial) {
    Eigen::MatrixXd a(6, 6);
    for (int r = 0; r < 6; ++r) {
      for (int c = 0; c < 6; ++c) {
        a(r, c) = qonet_test::draw_uniform(rng, -1.0, 1.0);
      }
    }
    a *= 0.5 / operator_norm(a);
    // ||A t|| <= 1 over the drawn range, where the series is convergent.
    const double t = qonet_test::draw_uniform(rng, 0.1, 2.0);
    CHECK(operator_norm(matrix_exp(a, t) -
                        qonet_test::power_series_exp(a, t)) <= 1e-10);
  }
}

TEST_CASE("propagate pins the grid contract") {
  const qonet_test::Complete5 sys = qonet_test::make_complete5();

  SUBCASE("singleton grid yields the identity") {
    const Propagator prop = propagate(sys.augmented, {0.0});
    REQUIRE(prop.size() == 1);
    CHECK(prop.phi[0] == Eigen::MatrixXd::Identity(11, 11));
  }
  SUBCASE("grids must start at zero and increase") {
    CHECK_THROWS_AS(propagate(sys.augmented, {0.5, 1.0}), SimulationError);
    CHECK_THROWS_AS(propagate(sys.augmented, {0.0, 1.0, 1.0}),
                    SimulationError);
    CHECK_THROWS_AS(propagate(sys.augmented, {}), SimulationError);
  }
  SUBCASE("first propagator row never moves") {
    const Propagator prop = propagate(sys.augmented, uniform_grid(10.0, 0.01));
    Eigen::RowVectorXd e1 = Eigen::RowVectorXd::Zero(11);
    e1(0) = 1.0;
    double worst = 0.0;
    for (const Eigen::MatrixXd& phi : prop.phi) {
      worst = std::max(worst, (phi.row(0) - e1).norm());
    }
    CHECK(worst <= 1e-8);
  }
  SUBCASE("semigroup consistency") {
    CHECK(semigroup_residual(sys.augmented.A_a, 0.5) <= 1e-8);
    CHECK(semigroup_residual(sys.augmented.A_a, 5.0) <= 1e-8);
  }
}

TEST_CASE("uniform_grid shape") {
  const std::vector<double> grid = uniform_grid(10.0, 0.01);
  CHECK(grid.size() == 1001);
  CHECK(grid.front() == 0.0);
  CHECK(grid[1] == 0.01);
  CHECK_THROWS_AS(uniform_grid(-1.0, 0.1), SimulationError);
  CHECK_THROWS_AS(uniform_grid(1.0, 0.0), SimulationError);
}

TEST_CASE("coefficient traces of the complete-graph example") {
  const qonet_test::Complete5 sys = qonet_test::make_complete5();
  const Propagator prop = propagate(sys.augmented, uniform_grid(10.0, 0.01));
  const SimulationResult result = coefficient_traces(sys.augmented, prop);

  SUBCASE("plant output row is constant: coefficient one on the plant "
          "state, zero elsewhere") {
    CHECK(result.residuals.at("plant_row_constancy") <= 1e-8);
    for (Eigen::Index s = 0; s < result.traces[0].rows(); ++s) {
      CHECK(std::abs(result.traces[0](s, 0) - 1.0) <= 1e-8);
      for (Eigen::Index j = 1; j < result.traces[0].cols(); ++j) {
        CHECK(std::abs(result.traces[0](s, j)) <= 1e-8);
      }
    }
  }
  SUBCASE("traces start at the output map") {
    for (int k = 0; k < result.output_rows(); ++k) {
      CHECK(result.traces[k].row(0) == sys.augmented.C_a.row(k));
    }
  }
  SUBCASE("observer-row coefficients respect the conditioning bound") {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        sys.realization.R_o);
    const double bound = std::sqrt(solver.eigenvalues().maxCoeff() /
                                   solver.eigenvalues().minCoeff()) *
                             operator_norm(sys.augmented.C_a) +
                         1.0;
    CHECK(result.traces[1].cwiseAbs().maxCoeff() <= bound);
  }
}

TEST_CASE("closed-form time average") {
  const qonet_test::Complete5 sys = qonet_test::make_complete5();
  const int dim = sys.augmented.state_dim();
  Eigen::RowVectorXd e1 = Eigen::RowVectorXd::Zero(dim);
  e1(0) = 1.0;

  SUBCASE("long horizons park every observer row at the plant row") {
    const Eigen::MatrixXd avg = time_average_closed_form(sys.augmented, 1e6);
    for (Eigen::Index k = 1; k < avg.rows(); ++k) {
      CHECK((avg.row(k) - e1).norm() <= 1e-5);
    }
  }
  SUBCASE("vanishing horizons recover the output map") {
    const Eigen::MatrixXd avg = time_average_closed_form(sys.augmented, 1e-8);
    CHECK((avg - sys.augmented.C_a).cwiseAbs().maxCoeff() <= 1e-6);
  }
  SUBCASE("plant row is exactly the first unit row") {
    const Eigen::MatrixXd avg = time_average_closed_form(sys.augmented, 42.0);
    CHECK(avg.row(0) == e1);
  }
  SUBCASE("matches the factored inverse form") {
    // (e^{A_o T} - I) A_o^{-1} = 1/2 e^{A_o T} R_o^{-1} Theta_o^{-1}
    //                            - 1/2 R_o^{-1} Theta_o^{-1}
    const double T = 7.3;
    const Eigen::MatrixXd& drift = sys.realization.A_o;
    const Eigen::MatrixXd flow = matrix_exp(drift, T);
    const Eigen::MatrixXd identity =
        Eigen::MatrixXd::Identity(drift.rows(), drift.cols());
    const Eigen::MatrixXd direct = drift.fullPivLu().solve(flow - identity);
    const Eigen::MatrixXd inverse_pair =
        sys.realization.R_o.fullPivLu().inverse() *
        sys.realization.Theta_o.transpose();
    const Eigen::MatrixXd factored =
        0.5 * flow * inverse_pair - 0.5 * inverse_pair;
    CHECK(operator_norm(direct - factored) <= 1e-12);
  }
  SUBCASE("matches the quadrature oracle") {
    for (double T : {10.0, 100.0}) {
      const Eigen::MatrixXd closed =
          time_average_closed_form(sys.augmented, T);
      const Eigen::MatrixXd simpson =
          qonet_test::simpson_average(sys.augmented, T, 1e-3);
      CHECK((closed - simpson).cwiseAbs().maxCoeff() <= 1e-6);
    }
  }
  SUBCASE("nonpositive horizons are rejected") {
    CHECK_THROWS_AS(time_average_closed_form(sys.augmented, 0.0),
                    SimulationError);
  }
  SUBCASE("singular observer drift is reported") {
    Eigen::MatrixXd r = Eigen::MatrixXd::Zero(2, 2);
    r(0, 0) = 1.0;  // rank deficient
    const NetworkRealization real = NetworkRealization::unchecked(
        Eigen::VectorXd::Ones(1), r, Eigen::VectorXd::Zero(2),
        Eigen::Vector2d(1.0, 0.0));
    PlantSpec plant;
    plant.C_p << 1, 0, 0;
    const AugmentedSystem aug = assemble_augmented(plant, real);
    CHECK_THROWS_AS(time_average_closed_form(aug, 1.0), SynthesisError);
  }
}

TEST_CASE("running averages by quadrature") {
  SUBCASE("constant traces average to themselves") {
    SimulationResult result;
    result.grid = uniform_grid(1.0, 0.1);
    result.traces.push_back(
        Eigen::MatrixXd::Constant(static_cast<int>(result.grid.size()), 3,
                                  0.7));
    time_average_quadrature(result);
    CHECK((result.running_avg[0].array() - 0.7).abs().maxCoeff() <= 1e-15);
  }
  SUBCASE("sinusoid averages to its closed form") {
    SimulationResult result;
    result.grid = uniform_grid(5.0, 1e-3);
    const int samples = static_cast<int>(result.grid.size());
    Eigen::MatrixXd trace(samples, 1);
    for (int s = 0; s < samples; ++s) {
      trace(s, 0) = std::sin(2.0 * result.grid[s]);
    }
    result.traces.push_back(trace);
    time_average_quadrature(result);
    for (int s = 1; s < samples; ++s) {
      const double T = result.grid[s];
      const double expected = (1.0 - std::cos(2.0 * T)) / (2.0 * T);
      CHECK(std::abs(result.running_avg[0](s, 0) - expected) <= 1e-5);
    }
  }
  SUBCASE("agrees with the closed form on a dense grid") {
    const qonet_test::Complete5 sys = qonet_test::make_complete5();
    const Propagator prop =
        propagate(sys.augmented, uniform_grid(100.0, 0.002));
    SimulationResult result = coefficient_traces(sys.augmented, prop);
    time_average_quadrature(result);
    CHECK(result.advisories.empty());

    for (double T : {10.0, 50.0, 100.0}) {
      const Eigen::MatrixXd closed =
          time_average_closed_form(sys.augmented, T);
      const int idx = static_cast<int>(std::lround(T / 0.002));
      double worst = 0.0;
      for (int k = 0; k < result.output_rows(); ++k) {
        worst = std::max(worst, (result.running_avg[k].row(idx) -
                                 closed.row(k)).cwiseAbs().maxCoeff());
      }
      CHECK(worst <= 1e-6);
    }
  }
  SUBCASE("coarse grids raise the advisory") {
    const qonet_test::Complete5 sys = qonet_test::make_complete5();
    const Propagator prop = propagate(sys.augmented, uniform_grid(10.0, 0.6));
    SimulationResult result = coefficient_traces(sys.augmented, prop);
    time_average_quadrature(result);
    REQUIRE(result.advisories.size() == 1);
    CHECK(result.advisories[0].find("GridTooCoarse") == 0);
  }
}

TEST_CASE("consensus deviation decays like 1/T") {
  const qonet_test::Complete5 sys = qonet_test::make_complete5();
  const std::vector<double> horizons = {50,  100, 200, 400,
                                        800, 1000};
  const ConvergenceReport report =
      check_convergence(sys.augmented, sys.realization, horizons);

  REQUIRE(report.deviations.size() == horizons.size());
  CHECK(report.within_bound);

  // Envelope constant for this system: (6 + sqrt(6)) / 2.
  CHECK(report.bound_constant ==
        doctest::Approx(4.224744871391589).epsilon(1e-12));

  // Frozen closed-form values.
  CHECK(report.deviations[5] ==
        doctest::Approx(3.520414912673e-04).epsilon(1e-6));
  CHECK(report.deviations[5] <= 0.01);

  const double r50 = report.deviations[1] / report.deviations[0];
  const double r100 = report.deviations[2] / report.deviations[1];
  const double r200 = report.deviations[3] / report.deviations[2];
  CHECK(r50 == doctest::Approx(0.323459974926).epsilon(1e-6));
  CHECK(r100 == doctest::Approx(0.748527277414).epsilon(1e-6));
  CHECK(r200 == doctest::Approx(0.463589452864).epsilon(1e-6));

  // Scaled deviations stay within a factor two of each other.
  double lo = 1e300, hi = 0.0;
  for (std::size_t k = 1; k <= 4; ++k) {  // T in {100, 200, 400, 800}
    const double scaled = report.deviations[k] * horizons[k];
    lo = std::min(lo, scaled);
    hi = std::max(hi, scaled);
  }
  CHECK(hi / lo <= 2.0);
  CHECK(hi <= report.bound_constant);
}

TEST_CASE("hamiltonian conservation along the shifted flow") {
  const qonet_test::Complete5 sys = qonet_test::make_complete5();
  const Propagator flow =
      propagate_matrix(sys.realization.A_o, uniform_grid(10.0, 0.01));

  SUBCASE("random states conserve the quadratic form") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 5; ++trial) {
      const Eigen::VectorXd x0 = qonet_test::draw_vector(rng, 10, -1.0, 1.0);
      CHECK(check_hamiltonian_conservation(sys.realization, x0, flow) <=
            1e-8);
    }
  }
  SUBCASE("zero states are rejected") {
    CHECK_THROWS_AS(check_hamiltonian_conservation(
                        sys.realization, Eigen::VectorXd::Zero(10), flow),
                    SimulationError);
  }
  SUBCASE("pure rotation keeps the norm") {
    const NetworkRealization real = NetworkRealization::unchecked(
        Eigen::VectorXd::Ones(1), Eigen::MatrixXd::Identity(2, 2),
        Eigen::VectorXd::Zero(2), Eigen::Vector2d(1.0, 0.0));
    const Propagator rotation =
        propagate_matrix(real.A_o, uniform_grid(10.0, 0.1));
    Eigen::VectorXd x0(2);
    x0 << 1.0, 0.0;
    CHECK(check_hamiltonian_conservation(real, x0, rotation) <= 1e-12);
    for (const Eigen::MatrixXd& phi : rotation.phi) {
      CHECK(std::abs((phi * x0).norm() - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("commutation preservation") {
  const qonet_test::Complete5 sys = qonet_test::make_complete5();

  SUBCASE("trivial at time zero") {
    const Propagator prop = propagate_matrix(sys.realization.A_o, {0.0});
    CHECK(check_symplectic_ccr(sys.realization, prop) == 0.0);
  }
  SUBCASE("holds along the synthesized flow") {
    const Propagator prop =
        propagate_matrix(sys.realization.A_o, uniform_grid(10.0, 0.05));
    CHECK(check_symplectic_ccr(sys.realization, prop) <= 1e-8);
  }
  SUBCASE("a non-Hamiltonian drift fails the probe") {
    Eigen::MatrixXd drift(2, 2);
    drift << 1.0, 0.0, 0.0, -0.5;  // nonzero trace: outside the algebra
    Eigen::Matrix2d j;
    j << 0, 1, -1, 0;
    const Propagator prop = propagate_matrix(drift, uniform_grid(1.0, 0.25));
    CHECK(symplectic_residual(j, prop) > 0.1);
  }
  SUBCASE("a non-symmetric Hamiltonian matrix fails the probe") {
    Eigen::MatrixXd r(2, 2);
    r << 1.0, 1.0, 0.0, 1.0;  // not symmetric
    const NetworkRealization real = NetworkRealization::unchecked(
        Eigen::VectorXd::Ones(1), r, Eigen::VectorXd::Zero(2),
        Eigen::Vector2d(1.0, 0.0));
    const Propagator prop =
        propagate_matrix(real.A_o, uniform_grid(2.0, 0.25));
    CHECK(check_symplectic_ccr(real, prop) > 0.1);
  }
}

TEST_CASE("flow norm bound from the conditioning of R_o") {
  const qonet_test::Complete5 sys = qonet_test::make_complete5();

  SUBCASE("time zero sits at 1/sqrt(kappa)") {
    const Propagator prop = propagate_matrix(sys.realization.A_o, {0.0});
    CHECK(check_norm_bound(sys.realization, prop) ==
          doctest::Approx(1.0 / std::sqrt(6.0)).epsilon(1e-12));
  }
  SUBCASE("holds over a long window") {
    const Propagator prop =
        propagate_matrix(sys.realization.A_o, uniform_grid(100.0, 0.1));
    CHECK(check_norm_bound(sys.realization, prop) <= 1.0 + 1e-8);
  }
  SUBCASE("identity Hamiltonian matrix gives an orthogonal flow") {
    const NetworkRealization real = NetworkRealization::unchecked(
        Eigen::VectorXd::Ones(1), Eigen::MatrixXd::Identity(2, 2),
        Eigen::VectorXd::Zero(2), Eigen::Vector2d(1.0, 0.0));
    const Propagator prop =
        propagate_matrix(real.A_o, uniform_grid(10.0, 0.5));
    const double ratio = check_norm_bound(real, prop);
    CHECK(std::abs(ratio - 1.0) <= 1e-12);
  }
}

TEST_CASE("synthesized drifts have purely imaginary spectra") {
  std::mt19937_64 rng(47);
  PlantSpec plant;
  plant.C_p << 1, 0, 0;
  const CouplingScheme scheme =
      CouplingScheme::from_plant(plant, Eigen::Vector2d(1.0, 0.0));
  for (int trial = 0; trial < 20; ++trial) {
    const int observers = 1 + static_cast<int>(rng() % 8);
    const NetworkRealization real = build_realization(
        make_random_connected(observers, rng(), 0.1, 2.0), scheme);
    CHECK(spectrum_max_real(real.A_o) <=
          1e-10 * std::max(1.0, operator_norm(real.A_o)));
  }
}
