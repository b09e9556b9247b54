// Serial reference vs OpenMP kernel for the exhaustive division scan.
#include <benchmark/benchmark.h>

#include "mercator/division_scan.hpp"

namespace {

void BM_ScanSerial(benchmark::State& state) {
  const int last = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto rows = mercator::scan_divisions_serial(2, last);
    benchmark::DoNotOptimize(rows.data());
  }
  state.SetItemsProcessed(state.iterations() * (last - 1));
}

void BM_ScanParallel(benchmark::State& state) {
  const int last = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto rows = mercator::scan_divisions(2, last);
    benchmark::DoNotOptimize(rows.data());
  }
  state.SetItemsProcessed(state.iterations() * (last - 1));
}

}  // namespace

BENCHMARK(BM_ScanSerial)->RangeMultiplier(10)->Range(1000, 10'000'000)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ScanParallel)->RangeMultiplier(10)->Range(1000, 10'000'000)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
