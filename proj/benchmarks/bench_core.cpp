#include <benchmark/benchmark.h>

#include "qrm/overlap.hpp"
#include "qrm/scan.hpp"

namespace {

const qrm::ModelParams kParams{0.7, 1.0, 1.0, 1.5};

void BM_DenseDiagonalize(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(qrm::diagonalize(kParams, n));
}
BENCHMARK(BM_DenseDiagonalize)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_BandLowest(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(qrm::lowest_energies(kParams, n, 10));
}
BENCHMARK(BM_BandLowest)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMicrosecond);

void BM_ConvergedLevels(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(qrm::lowest_energies_converged(kParams, 10));
}
BENCHMARK(BM_ConvergedLevels)->Unit(benchmark::kMicrosecond);

void BM_OverlapTable(benchmark::State& state) {
  const qrm::ModelParams row{0.7, 0.0, 1.0, 2.6};
  const qrm::ModelParams col{0.7, 0.0, 1.0, 0.5};
  for (auto _ : state) {
    const auto [er, ec] = qrm::matched_eigensystems(row, col, 10);
    benchmark::DoNotOptimize(qrm::classify_zeros(qrm::overlap_matrix(er, ec, 10)));
  }
}
BENCHMARK(BM_OverlapTable)->Unit(benchmark::kMillisecond);

void BM_SmallScan(benchmark::State& state) {
  qrm::GridSpec grid;
  grid.delta_range = {0.1, 1.1};
  grid.g_range = {0.1, 1.1};
  grid.step = 0.1;
  for (auto _ : state) benchmark::DoNotOptimize(qrm::min_gap_scan(1.0, grid, 10));
}
BENCHMARK(BM_SmallScan)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
