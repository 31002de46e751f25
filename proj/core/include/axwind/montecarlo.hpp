/**
 * @file montecarlo.hpp
 * @brief Injection/recovery estimate of the 5-sigma coupling.
 *
 * Each trial synthesises the wind envelope (aligned axis, no annual
 * modulation) over K_sim coherence segments, adds complex white noise at the
 * electron floor, matched-filters every segment and stacks the per-segment
 * powers. The coupling where half the trials cross the threshold is the
 * limit; when K exceeds the simulated count it is rescaled by (K_sim/K)^p.
 */
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "axwind/sensitivity.hpp"

namespace axwind {

struct MonteCarloOptions {
  std::size_t trials = 500;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::size_t max_segments = 256;
  std::size_t samples_per_segment = 16;
  std::size_t bootstrap = 200;
  double tolerance = 0.05;   ///< bisection stops when hi / lo <= 1 + tolerance
  double noise_scale = 1.0;  ///< multiplies the injected noise; 0 gives a noiseless run
  double confidence = 0.95;

  void validate() const;
};

struct MonteCarloResult {
  SensitivityPoint analytic;  ///< mc_low / mc_high filled in
  double g5 = 0.0;            ///< GeV^-1
  double band_low = 0.0;
  double band_high = 0.0;
  std::size_t simulated_segments = 0;
  double extrapolation = 1.0;  ///< (K_sim / K)^p
  std::vector<std::pair<double, double>> brackets;  ///< (lo, hi) per bisection step on the full set
};

MonteCarloResult monte_carlo_limit(double mass_ev, const SensorStack& stack, Protocol protocol,
                                   const HaloModel& halo, const DetectionSettings& settings = {},
                                   const MonteCarloOptions& options = {});

}  // namespace axwind
