#include <benchmark/benchmark.h>

#include "mixgap/chain.hpp"
#include "mixgap/eigensolve.hpp"
#include "mixgap/fixtures.hpp"

namespace {

mixgap::Matrix shifted_dilation(std::size_t n) {
  const auto p = mixgap::fixtures::random_ergodic(n, 42);
  mixgap::Matrix s = mixgap::generic_dilation(mixgap::build_L(p)).matrix();
  s.diagonal().array() += 1.0;
  return s;
}

void BM_DenseSecondEigenvalue(benchmark::State& state) {
  const auto s = shifted_dilation(std::size_t(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mixgap::dense_symmetric_spectrum(s)[1]);
}

void BM_LanczosSecondEigenvalue(benchmark::State& state) {
  const auto s = shifted_dilation(std::size_t(state.range(0)));
  const mixgap::LanczosConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(mixgap::lanczos_second_eigenvalue(s, cfg));
}

void BM_DeflatedRadius(benchmark::State& state) {
  const auto p = mixgap::fixtures::random_ergodic(std::size_t(state.range(0)), 42);
  const auto l = mixgap::build_L(p);
  const mixgap::Vector u = p.stationary().cwiseSqrt();
  const mixgap::LanczosConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(mixgap::deflated_spectral_radius(l, u, cfg));
}

}  // namespace

BENCHMARK(BM_DenseSecondEigenvalue)->RangeMultiplier(2)->Range(8, 256)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_LanczosSecondEigenvalue)->RangeMultiplier(2)->Range(8, 256)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_DeflatedRadius)->RangeMultiplier(2)->Range(8, 256)->Unit(benchmark::kMicrosecond);
