#include <benchmark/benchmark.h>

#include "levylab/operators.hpp"

using namespace levylab;

namespace {

QuadratureConfig cfg_for(double tol) {
  QuadratureConfig cfg;
  cfg.rel_tol = tol;
  cfg.abs_tol = tol;
  return cfg;
}

void BM_ApplyGenerator(benchmark::State& state) {
  const auto spec = LevyMeasureSpec::truncated(1, 1.5, 1.0, 1.0);
  const auto field = CoefficientField::sinusoidal(1, 2.0, 1.0);
  const auto f = gaussian_bump(1);
  const auto cfg = cfg_for(std::pow(10.0, -state.range(0)));
  for (auto _ : state) {
    auto r = apply_generator(spec, field, f, Vec{0.3}, cfg);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_ApplyGenerator)->Arg(6)->Arg(8)->Arg(10);

void BM_CouplingOperator(benchmark::State& state) {
  const auto spec = LevyMeasureSpec::truncated(1, 1.5, 1.0, 1.0);
  const auto field = CoefficientField::sinusoidal(1, 2.0, 1.0);
  const auto h = pair_sum(gaussian_bump(1), cauchy_bump(1));
  const auto cfg = cfg_for(std::pow(10.0, -state.range(0)));
  for (auto _ : state) {
    auto r = apply_coupling(spec, field, h, Vec{0.1}, Vec{0.6}, 1.0, cfg);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_CouplingOperator)->Arg(6)->Arg(8);

void BM_DisplacedMass1d(benchmark::State& state) {
  const auto spec = LevyMeasureSpec::homogeneous(1, 0.5, 1.0);
  const auto cfg = cfg_for(1e-8);
  for (auto _ : state) {
    auto r = displaced_min_mass(spec, Vec{0.05}, cfg);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_DisplacedMass1d);

void BM_DisplacedMass2dCone(benchmark::State& state) {
  const auto spec = LevyMeasureSpec::cone(2, 0.8, 1.0, Vec{1.0, 0.0}, 0.5);
  const auto cfg = cfg_for(1e-7);
  for (auto _ : state) {
    auto r = displaced_min_mass(spec, Vec{0.05, 0.02}, cfg);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_DisplacedMass2dCone);

}  // namespace

BENCHMARK_MAIN();
