#include <benchmark/benchmark.h>

#include "grodeph/walk.hpp"

using namespace grodeph;

static void BM_WalkAveraged(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const StarWalkSpec spec = make_star_walk(n, 5, PhaseDensity::uniform(1.0));
  for (auto _ : state) {
    EvolutionTrace trace = simulate_walk_averaged(spec, 10);
    benchmark::DoNotOptimize(trace);
  }
}
BENCHMARK(BM_WalkAveraged)->Arg(32)->Arg(64)->Arg(128);

static void BM_WalkMonteCarlo(benchmark::State& state) {
  const int n = 64;
  const StarWalkSpec spec = make_star_walk(n, 5, PhaseDensity::uniform(1.0));
  const int shots = static_cast<int>(state.range(0));
  for (auto _ : state) {
    EvolutionTrace trace = simulate_walk_montecarlo(spec, 12, shots, 42);
    benchmark::DoNotOptimize(trace);
  }
}
BENCHMARK(BM_WalkMonteCarlo)->Arg(100)->Arg(1000);

BENCHMARK_MAIN();
