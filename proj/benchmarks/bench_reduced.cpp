#include <benchmark/benchmark.h>

#include "grodeph/analytics.hpp"
#include "grodeph/reduced.hpp"
#include "grodeph/spectral.hpp"

using namespace grodeph;

static void BM_BuildStep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ProblemSpec spec = select_basis(n, 5, NoiseKind::Decoupled, false);
  const NoiseParams noise = make_noise_params(spec, 0.1);
  for (auto _ : state) {
    ReducedStep rs = build_step(spec, noise);
    benchmark::DoNotOptimize(rs);
  }
}
BENCHMARK(BM_BuildStep)->Arg(64)->Arg(1 << 16);

static void BM_Evolve1000(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ProblemSpec spec = select_basis(n, 5, NoiseKind::Decoupled, false);
  const NoiseParams noise = make_noise_params(spec, 0.1);
  for (auto _ : state) {
    EvolutionTrace trace = evolve(spec, noise, 1000);
    benchmark::DoNotOptimize(trace);
  }
}
BENCHMARK(BM_Evolve1000)->Arg(64)->Arg(1 << 16);

static void BM_Eigenvalues7(benchmark::State& state) {
  const ProblemSpec spec = select_basis(500, 10, NoiseKind::Decoupled, false);
  const ReducedStep rs = build_step(spec, make_noise_params(spec, 0.1));
  for (auto _ : state) {
    auto eig = eigenvalues(rs.unitary);
    benchmark::DoNotOptimize(eig);
  }
}
BENCHMARK(BM_Eigenvalues7);

static void BM_LimitingState(benchmark::State& state) {
  const ProblemSpec spec = select_basis(500, 10, NoiseKind::Coupled, false);
  const NoiseParams noise = make_noise_params(spec, 0.1);
  for (auto _ : state) {
    auto mu = limiting_state(spec, noise);
    benchmark::DoNotOptimize(mu);
  }
}
BENCHMARK(BM_LimitingState);

BENCHMARK_MAIN();
