#include "axwind/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include "axwind/errors.hpp"
#include "axwind/parallel.hpp"
#include "axwind/random.hpp"
#include "axwind/wind.hpp"

namespace axwind {

namespace {

enum StreamPurpose : std::uint32_t { kNoise = 0x4D434E4Fu, kResample = 0x4D434253u };

constexpr int kMaxExpansions = 20;

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Matched-filter sums of one trial. With z_k = g a_k + n_k the stacked power is
// sum |z_k|^2 = g^2 S_aa + 2 g S_an + S_nn, so any g is scored without resimulating.
struct TrialSums {
  double s_aa = 0.0;
  double s_an = 0.0;
  double s_nn = 0.0;
};

class Detector {
 public:
  Detector(const std::vector<TrialSums>& sums, double segments, double sigma)
      : sums_(sums), k_(segments), threshold_(0.5 * sigma * sigma) {}

  // Each |z_k|^2 has mean 2 under noise; P is the normalised excess power and
  // sqrt(2 P) the amplitude statistic compared against sigma.
  bool detected(const TrialSums& s, double g) const {
    const double power = g * g * s.s_aa + 2.0 * g * s.s_an + s.s_nn;
    return (power - 2.0 * k_) / (2.0 * std::sqrt(k_)) >= threshold_;
  }

  double fraction(const std::vector<std::size_t>& idx, double g) const {
    std::size_t hits = 0;
    for (std::size_t i : idx) hits += detected(sums_[i], g) ? 1 : 0;
    return static_cast<double>(hits) / static_cast<double>(idx.size());
  }

  // Geometric bisection for fraction = 1/2, then log-linear interpolation.
  double crossing(const std::vector<std::size_t>& idx, double guess, double tolerance,
                  std::vector<std::pair<double, double>>* history) const {
    double lo = guess / 4.0;
    double hi = guess * 4.0;
    double f_lo = fraction(idx, lo);
    double f_hi = fraction(idx, hi);
    std::vector<std::pair<double, double>> local;
    local.emplace_back(lo, hi);
    for (int i = 0; f_lo >= 0.5 || f_hi < 0.5; ++i) {
      if (i == kMaxExpansions) {
        std::ostringstream msg;
        msg.imbue(std::locale::classic());
        msg << "detection fraction never crossed 1/2; brackets:";
        for (const auto& [a, b] : local) msg << " [" << a << ", " << b << "]";
        throw ConvergenceError(msg.str());
      }
      if (f_lo >= 0.5) f_lo = fraction(idx, lo /= 4.0);
      if (f_hi < 0.5) f_hi = fraction(idx, hi *= 4.0);
      local.emplace_back(lo, hi);
    }
    while (hi / lo > 1.0 + tolerance) {
      const double mid = std::sqrt(lo * hi);
      const double f_mid = fraction(idx, mid);
      (f_mid >= 0.5 ? hi : lo) = mid;
      (f_mid >= 0.5 ? f_hi : f_lo) = f_mid;
      local.emplace_back(lo, hi);
    }
    if (history) *history = std::move(local);
    const double w = f_hi > f_lo ? (0.5 - f_lo) / (f_hi - f_lo) : 0.5;
    return std::exp(std::log(lo) + w * (std::log(hi) - std::log(lo)));
  }

 private:
  const std::vector<TrialSums>& sums_;
  double k_;
  double threshold_;
};

double percentile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto i = static_cast<std::size_t>(std::floor(pos));
  const std::size_t j = std::min(i + 1, sorted.size() - 1);
  return sorted[i] + (pos - static_cast<double>(i)) * (sorted[j] - sorted[i]);
}

}  // namespace

void MonteCarloOptions::validate() const {
  if (trials < 100) throw ConfigError("Monte Carlo needs at least 100 trials");
  if (max_segments < 1) throw ConfigError("Monte Carlo needs at least one segment");
  if (samples_per_segment < 2) throw ConfigError("Monte Carlo needs at least 2 samples per segment");
  if (bootstrap < 10) throw ConfigError("Monte Carlo needs at least 10 bootstrap resamples");
  if (!(tolerance > 0.0) || !(tolerance < 1.0)) throw ConfigError("Monte Carlo tolerance must lie in (0, 1)");
  if (!(noise_scale >= 0.0) || !std::isfinite(noise_scale)) throw ConfigError("noise scale must be >= 0");
  if (!(confidence > 0.0) || !(confidence < 1.0)) throw ConfigError("confidence must lie in (0, 1)");
}

MonteCarloResult monte_carlo_limit(double mass_ev, const SensorStack& stack, Protocol protocol,
                                   const HaloModel& halo, const DetectionSettings& settings,
                                   const MonteCarloOptions& options) {
  options.validate();
  MonteCarloResult out;
  out.analytic = five_sigma_threshold(mass_ev, stack, protocol, halo, settings);
  const SensitivityPoint& a = out.analytic;

  const double k_total = a.stacking;
  const auto k_sim = static_cast<std::size_t>(std::min<double>(k_total, static_cast<double>(options.max_segments)));
  out.simulated_segments = k_sim;
  out.extrapolation = std::pow(static_cast<double>(k_sim) / k_total, settings.stacking.exponent);

  if (options.noise_scale == 0.0) {
    out.analytic.mc_low = out.analytic.mc_high = 0.0;
    return out;
  }

  const std::size_t n = options.samples_per_segment;
  const double dt = a.t_coh / static_cast<double>(n);
  const double eta = stack.noise_electron * settings.noise_shape.factor(units::rad_to_hz(a.omega_a));
  // Complex baseband noise of one-sided density eta: each quadrature has variance eta^2 / dt.
  const double sigma = eta / std::sqrt(dt);
  const double chain = stack.entanglement_gain() * stack.resonator_gain() * a.hybrid_gain;

  HaloModel steady = halo;
  steady.annual_depth = 0.0;
  const LabSite site{0.25 * kTwoPi, 0.0, 0.0};  // axis along Earth's rotation axis
  const WindDirection dir{0.0, 0.0};             // wind along the same axis: projection = 1
  WindOptions wind;
  wind.phase_renewal = true;

  std::vector<TrialSums> sums(options.trials);
  const std::vector<std::complex<double>> templ(n, {1.0, 0.0});
  parallel_for(options.trials, options.threads, [&](std::size_t trial) {
    const std::uint64_t trial_seed = splitmix(options.seed ^ splitmix(trial));
    const EnvelopeSeries env = wind_envelope_series(1.0, mass_ev, steady, stack.isotope, site, dir,
                                                    static_cast<double>(k_sim) * a.t_coh, dt, trial_seed, wind);
    RandomStream rng(options.seed, stream_id(kNoise, static_cast<std::uint32_t>(trial)));
    std::vector<std::complex<double>> signal(n);
    std::vector<std::complex<double>> noise(n);
    TrialSums s;
    for (std::size_t k = 0; k < k_sim; ++k) {
      for (std::size_t j = 0; j < n; ++j) {
        const std::size_t idx = std::min(k * n + j, env.size() - 1);
        signal[j] = chain * env.samples[idx];
        const double re = rng.normal();
        const double im = rng.normal();
        noise[j] = options.noise_scale * sigma * std::complex<double>(re, im);
      }
      const auto za = matched_filter_output(signal, templ, sigma);
      const auto zn = matched_filter_output(noise, templ, sigma);
      s.s_aa += std::norm(za);
      s.s_an += std::real(std::conj(za) * zn);
      s.s_nn += std::norm(zn);
    }
    sums[trial] = s;
  });

  const Detector detector(sums, static_cast<double>(k_sim), settings.sigma);
  const double guess = a.g5 / out.extrapolation;
  std::vector<std::size_t> all(options.trials);
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  const double g_sim = detector.crossing(all, guess, options.tolerance, &out.brackets);

  std::vector<double> resampled(options.bootstrap);
  parallel_for(options.bootstrap, options.threads, [&](std::size_t b) {
    RandomStream rng(options.seed, stream_id(kResample, static_cast<std::uint32_t>(b)));
    std::vector<std::size_t> idx(options.trials);
    for (auto& i : idx)
      i = std::min(options.trials - 1, static_cast<std::size_t>(rng.uniform() * static_cast<double>(options.trials)));
    resampled[b] = detector.crossing(idx, g_sim, options.tolerance, nullptr);
  });
  std::sort(resampled.begin(), resampled.end());

  const double tail = 0.5 * (1.0 - options.confidence);
  out.g5 = g_sim * out.extrapolation;
  out.band_low = percentile(resampled, tail) * out.extrapolation;
  out.band_high = percentile(resampled, 1.0 - tail) * out.extrapolation;
  out.analytic.mc_low = out.band_low;
  out.analytic.mc_high = out.band_high;
  return out;
}

}  // namespace axwind
