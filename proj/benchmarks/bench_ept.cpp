#include <benchmark/benchmark.h>

#include <algorithm>
#include <random>
#include <vector>

#include "ept/ept.hpp"

namespace {

std::vector<double> noise(std::size_t n) {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> g;
  std::vector<double> x(n);
  for (auto& v : x) v = g(rng);
  return x;
}

void BM_SlidingExtrema(benchmark::State& state) {
  const auto x = noise(static_cast<std::size_t>(state.range(0)));
  const int tau = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(ept::sliding_extrema(x, tau));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SlidingExtrema)->Args({1 << 16, 8})->Args({1 << 16, 64})->Args({1 << 16, 512});

// Window rescan per center, the baseline the deque version replaces.
void BM_NaiveExtrema(benchmark::State& state) {
  const auto x = noise(static_cast<std::size_t>(state.range(0)));
  const int tau = static_cast<int>(state.range(1));
  const auto n = static_cast<std::ptrdiff_t>(x.size());
  std::vector<double> lo(x.size()), hi(x.size());
  for (auto _ : state) {
    for (std::ptrdiff_t c = 0; c < n; ++c) {
      const auto w = ept::clamped_window(c, tau, n);
      const auto [mn, mx] = std::minmax_element(x.begin() + w.start, x.begin() + w.end());
      lo[c] = *mn;
      hi[c] = *mx;
    }
    benchmark::DoNotOptimize(lo.data());
    benchmark::DoNotOptimize(hi.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_NaiveExtrema)->Args({1 << 16, 8})->Args({1 << 16, 64})->Args({1 << 16, 512});

void BM_EnsembleSeries(benchmark::State& state) {
  const ept::Signal s(noise(1 << 14));
  const auto spec = state.range(1) == 0 ? ept::EnsembleSpec::eave(static_cast<int>(state.range(0)))
                                        : ept::EnsembleSpec::em(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ept::ensemble_series(s, spec));
}
BENCHMARK(BM_EnsembleSeries)->Args({21, 0})->Args({21, 1})->Args({101, 0})->Args({101, 1});

void BM_Extract(benchmark::State& state) {
  const auto g = ept::make_preset(ept::Preset::Example1, 1, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(ept::extract(g.signal, ept::EnsembleSpec::eave(21)));
}
BENCHMARK(BM_Extract)->Arg(1000)->Arg(10000);

void BM_BuildMap(benchmark::State& state) {
  const ept::Signal s(noise(4096));
  std::vector<int> taus;
  for (int t = 2; t <= 64; ++t) taus.push_back(t);
  const ept::MapSource src = ept::EnsembleSpec::eave(2);
  for (auto _ : state)
    benchmark::DoNotOptimize(ept::build_map(s, taus, src, ept::StatKind::Ave));
}
BENCHMARK(BM_BuildMap);

}  // namespace

BENCHMARK_MAIN();
