#include <benchmark/benchmark.h>

#include "grodeph/full_sim.hpp"

using namespace grodeph;

static void BM_FullStep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ProblemSpec spec = select_basis(n, 5, NoiseKind::Decoupled, false);
  const NoiseConfig noise = make_noise_config(spec, 0.1);
  DensityMatrix rho = uniform_superposition_density(n);
  for (auto _ : state) {
    rho = apply_noisy_step(std::move(rho), noise);
    benchmark::DoNotOptimize(rho);
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_FullStep)->RangeMultiplier(2)->Range(64, 512)->Complexity();

static void BM_ProjectToSigma(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ProblemSpec spec = select_basis(n, 5, NoiseKind::Decoupled, false);
  const DensityMatrix rho = uniform_superposition_density(n);
  for (auto _ : state) {
    auto projection = project_to_sigma(rho, spec);
    benchmark::DoNotOptimize(projection);
  }
}
BENCHMARK(BM_ProjectToSigma)->Arg(64)->Arg(256);

BENCHMARK_MAIN();
