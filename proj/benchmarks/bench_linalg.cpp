#include <benchmark/benchmark.h>

#include "rwl/linalg.hpp"
#include "rwl/random.hpp"
#include "rwl/record_model.hpp"

namespace {

rwl::StateVector random_vector(rwl::Rng& rng, std::size_t dim) {
  std::vector<rwl::Complex> a(dim);
  for (auto& x : a) x = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
  return rwl::StateVector(a);
}

void BM_Orthonormalize(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  rwl::Rng rng(1);
  std::vector<rwl::StateVector> vs;
  for (std::size_t i = 0; i < dim / 2; ++i) vs.push_back(random_vector(rng, dim));
  for (auto _ : state) benchmark::DoNotOptimize(rwl::orthonormalize(vs));
}
BENCHMARK(BM_Orthonormalize)->RangeMultiplier(2)->Range(8, 256);

void BM_Project(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  rwl::Rng rng(2);
  std::vector<rwl::StateVector> vs;
  for (std::size_t i = 0; i < dim / 2; ++i) vs.push_back(random_vector(rng, dim));
  const auto sector = rwl::Sector::span(vs);
  const auto psi = random_vector(rng, dim);
  for (auto _ : state) benchmark::DoNotOptimize(rwl::project(psi, sector));
}
BENCHMARK(BM_Project)->RangeMultiplier(2)->Range(8, 256);

void BM_BinaryRefinement(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  rwl::Rng rng(3);
  const auto psi = random_vector(rng, dim);
  const auto sector = rwl::Sector::full(dim);
  const double s = rwl::project(psi, sector).norm();
  for (auto _ : state) benchmark::DoNotOptimize(rwl::make_binary_refinement(sector, psi, 0.3 * s));
}
BENCHMARK(BM_BinaryRefinement)->RangeMultiplier(2)->Range(4, 64);

}  // namespace
