#include <benchmark/benchmark.h>

#include "axwind/transduction.hpp"
#include "axwind/wind.hpp"

namespace {

using namespace axwind;

void BM_EnvelopeSpectrumYears(benchmark::State& state) {
  const auto& table = ParameterTable::builtin();
  WindOptions opts;
  opts.phase_renewal = false;
  const double years = static_cast<double>(state.range(0));
  const auto env = wind_envelope_series(1e-10, 1e-12, table.halo("shm"), table.isotope("Bi209"), {}, {},
                                        years * kYearSeconds, 3600.0, 1, opts);
  for (auto _ : state) benchmark::DoNotOptimize(envelope_spectrum(env));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(env.size()));
}
BENCHMARK(BM_EnvelopeSpectrumYears)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_SpinLockSeries(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(spin_lock_series(kTwoPi * 50e3, kTwoPi * 5e3, 0.01 * kTwoPi * 5e3, 10e-3, 1e-6));
}
BENCHMARK(BM_SpinLockSeries)->Unit(benchmark::kMicrosecond);

}  // namespace
