#include <benchmark/benchmark.h>

#include "rwl/funceq.hpp"
#include "rwl/scenarios.hpp"

namespace {

void BM_FunctionalEquationGrid(benchmark::State& state) {
  const auto grid = rwl::uniform_grid(4.0, 1.0 / static_cast<double>(state.range(0)));
  const auto g = rwl::ProfileFunction::counterexample(0.5);
  const auto pairs = rwl::compatible_pairs(g, grid);
  for (auto _ : state) benchmark::DoNotOptimize(rwl::check_functional_equation(g, pairs));
  state.counters["pairs"] = static_cast<double>(pairs.size());
}
BENCHMARK(BM_FunctionalEquationGrid)->Arg(16)->Arg(32)->Arg(64);

void BM_CertifyQuadratic(benchmark::State& state) {
  const auto grid = rwl::uniform_grid(4.0, 1.0 / 64.0);
  const auto g = rwl::ProfileFunction::quadratic(1.5);
  for (auto _ : state) benchmark::DoNotOptimize(rwl::certify_quadratic(g, grid, 1e-12));
}
BENCHMARK(BM_CertifyQuadratic);

void BM_DenseSaturationDemo(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(rwl::dense_saturation_demo(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_DenseSaturationDemo)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

}  // namespace
