// Microbenchmarks for the hot paths: the forward transform, the full
// filter, transfer-function construction, and the usable-band search.

#include <benchmark/benchmark.h>

#include <cmath>

#include "brewster/analysis.hpp"

using brewster::field::GridSpec;
using brewster::optics::OpticalConfig;

namespace {

void BM_to_spectrum(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto f = brewster::field::make_gaussian(32.0, {n, 512.0});
  for (auto _ : state)
    benchmark::DoNotOptimize(brewster::field::to_spectrum(f));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_to_spectrum)->RangeMultiplier(4)->Range(1 << 10, 1 << 18)
    ->Complexity(benchmark::oNLogN);

void BM_apply_green(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto f = brewster::field::make_gaussian(32.0, {n, 512.0});
  const auto cfg = OpticalConfig::at_brewster(2.1);
  const double limit = std::cos(cfg.theta) * (1.0 - 1e-9);
  const auto g = brewster::greens::exact_brewster_green(
      cfg, brewster::greens::symmetric_grid(limit, 4097));
  for (auto _ : state)
    benchmark::DoNotOptimize(brewster::field::apply_green(f, g));
}
BENCHMARK(BM_apply_green)->RangeMultiplier(4)->Range(1 << 12, 1 << 16);

void BM_exact_green(benchmark::State& state) {
  const auto cfg = OpticalConfig::at_brewster(2.1);
  const double limit = std::cos(cfg.theta) * (1.0 - 1e-9);
  const auto grid = brewster::greens::symmetric_grid(
      limit, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(brewster::greens::exact_brewster_green(cfg,
                                                                    grid));
}
BENCHMARK(BM_exact_green)->Arg(883)->Arg(4097)->Arg(32769);

void BM_max_bandwidth(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(brewster::analysis::max_bandwidth(2.1, 0.10));
}
BENCHMARK(BM_max_bandwidth);

}  // namespace

BENCHMARK_MAIN();
