#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "probectl/dynamics.hpp"
#include "probectl/search.hpp"
#include "probectl/synthesis.hpp"

using namespace probectl;

static void BM_Compose(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  Rotation a = Rotation::from_quaternion(g(rng), g(rng), g(rng), g(rng));
  Rotation b = Rotation::from_quaternion(g(rng), g(rng), g(rng), g(rng));
  for (auto _ : state) benchmark::DoNotOptimize(compose(a, b));
}
BENCHMARK(BM_Compose);

static void BM_Power(benchmark::State& state) {
  Rotation r = Rotation::about_z(M_PI / 7);
  for (auto _ : state) benchmark::DoNotOptimize(power(r, state.range(0)));
}
BENCHMARK(BM_Power)->Arg(15)->Arg(255);

static void BM_SynthIndicator(benchmark::State& state) {
  int k = static_cast<int>(state.range(0));
  SpectrumSpec spec = SpectrumSpec::consecutive(1L << k);
  for (auto _ : state)
    benchmark::DoNotOptimize(synth_indicator(spec, {(1L << k) - 1, k}));
}
BENCHMARK(BM_SynthIndicator)->Arg(2)->Arg(4)->Arg(6);

static void BM_BfsSearch(benchmark::State& state) {
  FiniteGroup d8 = build_group(GroupName::D8);
  SpectrumSpec spec = SpectrumSpec::consecutive(8);
  BoolFunc f = BoolFunc::indicator(spec, 3, 2);
  for (auto _ : state)
    benchmark::DoNotOptimize(bfs_search(d8, spec, f, SearchMode::StateLevel, 3,
                                        octagon_vertex(0)));
}
BENCHMARK(BM_BfsSearch);

static void BM_EvolveFull(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  std::vector<double> c(n);
  for (int q = 0; q < n; ++q) c[q] = static_cast<double>(1 << q);
  Eigen::VectorXcd reg = Eigen::VectorXcd::Zero(1L << n);
  reg(0) = 1.0;
  JointState s = JointState::product(Eigen::Vector3d::UnitX(), reg);
  for (auto _ : state)
    benchmark::DoNotOptimize(evolve_full(s, c, 0.3));
}
BENCHMARK(BM_EvolveFull)->Arg(2)->Arg(4)->Arg(6);

BENCHMARK_MAIN();
