#include <benchmark/benchmark.h>

#include "axwind/montecarlo.hpp"
#include "axwind/sensitivity.hpp"

namespace {

using namespace axwind;

SensorStack stack() {
  SensorStack s = SensorStack::for_isotope(ParameterTable::builtin().isotope("Bi209"));
  s.ensemble_size = 1e6;
  s.quality_factor = 1e5;
  return s;
}

void BM_Scan(benchmark::State& state) {
  const auto masses = log_mass_grid(1e-16, 1e-6, static_cast<double>(state.range(0)));
  const std::vector<Protocol> bank{Protocol::Ramsey, Protocol::Hahn, Protocol::Xy8, Protocol::SpinLock};
  const auto s = stack();
  const auto& halo = ParameterTable::builtin().halo("shm");
  for (auto _ : state) benchmark::DoNotOptimize(sensitivity_scan(masses, bank, s, halo));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(masses.size() * bank.size()));
}
BENCHMARK(BM_Scan)->Arg(20)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_MonteCarlo(benchmark::State& state) {
  MonteCarloOptions o;
  o.trials = static_cast<std::size_t>(state.range(0));
  const auto s = stack();
  const auto& halo = ParameterTable::builtin().halo("shm");
  for (auto _ : state) benchmark::DoNotOptimize(monte_carlo_limit(1e-13, s, Protocol::Ramsey, halo, {}, o));
}
BENCHMARK(BM_MonteCarlo)->Arg(100)->Arg(500)->Unit(benchmark::kMillisecond);

}  // namespace
