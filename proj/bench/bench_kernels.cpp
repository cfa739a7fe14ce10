// Serial vs OpenMP throughput for the index-parallel kernels.

#include <benchmark/benchmark.h>

#include <bit>
#include <cstdint>
#include <vector>

#include "ghdlab/kernels.hpp"
#include "ghdlab/parallel.hpp"
#include "ghdlab/random.hpp"

using namespace ghdlab;

namespace {

Exec exec_of(const benchmark::State& s) { return s.range(0) ? Exec::parallel : Exec::serial; }

std::vector<std::uint64_t> random_targets(std::size_t n, std::size_t count) {
  Rng rng(11);
  std::vector<std::uint64_t> t(count);
  for (auto& x : t) x = rng.below(1ULL << n);
  return t;
}

void BM_SnapTable(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(1));
  const auto targets = random_targets(n, 64);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::snap_table(n, targets, exec_of(state)));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(1ULL << n));
}

void BM_DistanceToSet(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(1));
  Rng rng(12);
  std::vector<std::uint8_t> member(1ULL << n);
  for (auto& m : member) m = rng.uniform() < 0.001;
  for (auto _ : state) benchmark::DoNotOptimize(kernels::distance_to_set(n, member, exec_of(state)));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(member.size()));
}

void BM_NearestRows(benchmark::State& state) {
  const std::size_t d = 8;
  Rng rng(13);
  std::vector<double> pts(4096 * d), qs(static_cast<std::size_t>(state.range(1)) * d);
  for (auto& v : pts) v = rng.normal();
  for (auto& v : qs) v = rng.normal();
  for (auto _ : state) {
    benchmark::DoNotOptimize(state.range(0) ? kernels::nearest_rows_parallel(pts, qs, d)
                                            : kernels::nearest_rows_serial(pts, qs, d));
  }
  state.SetItemsProcessed(state.iterations() * state.range(1));
}

// One trial: two random 1024-bit strings, count those at distance below 512.
void BM_MonteCarloTally(benchmark::State& state) {
  const RandomSource src{5, 0};
  const auto trials = static_cast<std::uint64_t>(state.range(1));
  for (auto _ : state) {
    const auto hits = count_if_index(
        trials,
        [&](std::uint64_t i) {
          Rng rng = src.substream(i).rng();
          int d = 0;
          for (int w = 0; w < 16; ++w) d += std::popcount(rng() ^ rng());
          return d < 512;
        },
        exec_of(state));
    benchmark::DoNotOptimize(hits);
  }
  state.SetItemsProcessed(state.iterations() * state.range(1));
}

}  // namespace

// First argument: 0 serial, 1 OpenMP.
BENCHMARK(BM_SnapTable)->ArgsProduct({{0, 1}, {14, 18}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DistanceToSet)->ArgsProduct({{0, 1}, {16, 20}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NearestRows)->ArgsProduct({{0, 1}, {1 << 12}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MonteCarloTally)->ArgsProduct({{0, 1}, {1 << 18}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
