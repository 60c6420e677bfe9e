#include <benchmark/benchmark.h>

#include <numeric>

#include "rwl/random.hpp"
#include "rwl/saturation.hpp"

namespace {

std::vector<double> random_weights(std::size_t n, std::uint64_t seed) {
  rwl::Rng rng(seed);
  std::vector<double> w(n);
  for (auto& x : w) x = rng.uniform(0.0, 1.0);
  return w;
}

void BM_GreedySubsetSum(benchmark::State& state) {
  const auto w = random_weights(static_cast<std::size_t>(state.range(0)), 1);
  const double target = 0.37 * std::accumulate(w.begin(), w.end(), 0.0);
  for (auto _ : state) benchmark::DoNotOptimize(rwl::subset_sum_greedy(w, target));
}
BENCHMARK(BM_GreedySubsetSum)->RangeMultiplier(4)->Range(4, 4096);

void BM_RealizedSums(benchmark::State& state) {
  const auto w = random_weights(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(rwl::realized_sums(w));
}
BENCHMARK(BM_RealizedSums)->DenseRange(4, 20, 4);

void BM_ExhaustiveBatch(benchmark::State& state) {
  const auto w = random_weights(static_cast<std::size_t>(state.range(0)), 3);
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  std::vector<double> targets;
  for (int i = 0; i < 100; ++i) targets.push_back(total * i / 100.0);
  for (auto _ : state) benchmark::DoNotOptimize(rwl::subset_sum_exhaustive(w, targets));
}
BENCHMARK(BM_ExhaustiveBatch)->DenseRange(8, 20, 4);

void BM_DensityCertificate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const std::vector<rwl::Decomposition> levels{rwl::Decomposition::uniform(n, 1.0), rwl::Decomposition::uniform(4 * n, 1.0)};
  const auto targets = rwl::default_targets(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(rwl::density_certificate(levels, targets));
}
BENCHMARK(BM_DensityCertificate)->RangeMultiplier(4)->Range(4, 1024);

}  // namespace
