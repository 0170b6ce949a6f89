#include <benchmark/benchmark.h>

#include "levylab/simulate.hpp"

using namespace levylab;

namespace {

SimParams params_with_cutoff(double eps) {
  SimParams p;
  p.jump_cutoff = eps;
  p.drift_step = 1e-3;
  p.horizon = 1.0;
  p.kappa = 1.0;
  p.master_seed = 1;
  return p;
}

void BM_SingleTrajectory(benchmark::State& state) {
  const auto spec = LevyMeasureSpec::truncated(1, 1.5, 1.0, 1.0);
  const auto field = CoefficientField::sinusoidal(1, 2.0, 1.0);
  const auto p = params_with_cutoff(1.0 / state.range(0));
  std::uint64_t stream = 0;
  long events = 0;
  for (auto _ : state) {
    auto path = simulate_single(spec, field, Vec{0.0}, p, stream++);
    events += path.proposals;
    benchmark::DoNotOptimize(path.endpoint);
  }
  state.counters["proposals/s"] =
      benchmark::Counter(static_cast<double>(events), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_SingleTrajectory)->Arg(20)->Arg(100);

void BM_CoupledTrajectory(benchmark::State& state) {
  const auto spec = LevyMeasureSpec::truncated(1, 1.5, 1.0, 1.0);
  const auto field = CoefficientField::sinusoidal(1, 2.0, 1.0);
  const auto p = params_with_cutoff(1.0 / state.range(0));
  std::uint64_t stream = 0;
  long events = 0;
  for (auto _ : state) {
    auto path = simulate_coupled(spec, field, Vec{0.0}, Vec{0.3}, p, stream++);
    events += path.proposals;
    benchmark::DoNotOptimize(path.x_end);
  }
  state.counters["proposals/s"] =
      benchmark::Counter(static_cast<double>(events), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_CoupledTrajectory)->Arg(20)->Arg(100);

void BM_RestrictedSampling(benchmark::State& state) {
  const auto spec = LevyMeasureSpec::cone(2, 0.8, 1.0, Vec{1.0, 0.0}, 0.5);
  Philox4x32 rng(7, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(spec.sample_restricted(rng, 1e-3));
  }
}
BENCHMARK(BM_RestrictedSampling);

}  // namespace

BENCHMARK_MAIN();
