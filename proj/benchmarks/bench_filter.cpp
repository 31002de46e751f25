#include <benchmark/benchmark.h>

#include "axwind/filter.hpp"

namespace {

using namespace axwind;

void BM_FilterNumeric(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  const auto seq = PulseSequence::build(SequenceKind::Cpmg, 1.0, n);
  const auto omega = xi_grid(1.0, 2.0 * static_cast<double>(n), 2048);
  for (auto _ : state) benchmark::DoNotOptimize(filter_numeric(seq, omega));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(omega.size()));
}
BENCHMARK(BM_FilterNumeric)->RangeMultiplier(4)->Range(4, 1024);

void BM_FilterAnalytic(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  const auto seq = PulseSequence::build(SequenceKind::Cpmg, 1.0, n);
  const auto omega = xi_grid(1.0, 2.0 * static_cast<double>(n), 2048);
  for (auto _ : state) {
    double acc = 0.0;
    for (double w : omega) acc += filter_magnitude(seq, w);
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(omega.size()));
}
BENCHMARK(BM_FilterAnalytic)->RangeMultiplier(4)->Range(4, 1024);

}  // namespace
