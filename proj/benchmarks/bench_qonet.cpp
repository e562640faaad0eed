#include <benchmark/benchmark.h>

#include "qonet/dynamics_engine.hpp"
#include "qonet/graph_generator.hpp"
#include "qonet/network_synthesis.hpp"

namespace {

qonet::NetworkRealization make_realization(int observers) {
  qonet::PlantSpec plant;
  plant.C_p << 1, 0, 0;
  const qonet::CouplingScheme scheme = qonet::CouplingScheme::from_plant(
      plant, Eigen::Vector2d(1.0, 0.0));
  return qonet::build_realization(
      qonet::make_random_connected(observers, 7, 0.1, 2.0), scheme);
}

void BM_synthesize(benchmark::State& state) {
  const int observers = static_cast<int>(state.range(0));
  const qonet::ObserverGraph g =
      qonet::make_random_connected(observers, 7, 0.1, 2.0);
  qonet::PlantSpec plant;
  plant.C_p << 1, 0, 0;
  const qonet::CouplingScheme scheme = qonet::CouplingScheme::from_plant(
      plant, Eigen::Vector2d(1.0, 0.0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(qonet::build_realization(g, scheme));
  }
}
BENCHMARK(BM_synthesize)->Arg(2)->Arg(5)->Arg(8);

void BM_matrix_exp(benchmark::State& state) {
  const qonet::NetworkRealization real =
      make_realization(static_cast<int>(state.range(0)));
  double t = 0.0;
  for (auto _ : state) {
    t += 0.01;
    benchmark::DoNotOptimize(qonet::matrix_exp(real.A_o, t));
  }
}
BENCHMARK(BM_matrix_exp)->Arg(2)->Arg(5)->Arg(8);

void BM_propagate_grid(benchmark::State& state) {
  qonet::PlantSpec plant;
  plant.C_p << 1, 0, 0;
  const qonet::NetworkRealization real = make_realization(5);
  const qonet::AugmentedSystem aug = qonet::assemble_augmented(plant, real);
  const std::vector<double> grid = qonet::uniform_grid(10.0, 0.01);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qonet::propagate(aug, grid));
  }
}
BENCHMARK(BM_propagate_grid);

void BM_closed_form_average(benchmark::State& state) {
  qonet::PlantSpec plant;
  plant.C_p << 1, 0, 0;
  const qonet::AugmentedSystem aug =
      qonet::assemble_augmented(plant, make_realization(5));
  double T = 10.0;
  for (auto _ : state) {
    T += 1.0;
    benchmark::DoNotOptimize(qonet::time_average_closed_form(aug, T));
  }
}
BENCHMARK(BM_closed_form_average);

void BM_certify(benchmark::State& state) {
  const qonet::NetworkRealization real =
      make_realization(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(qonet::certify_positive_definite(real));
  }
}
BENCHMARK(BM_certify)->Arg(5)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
