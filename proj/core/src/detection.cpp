#include "axwind/detection.hpp"

#include <cmath>
#include <numeric>

#include "axwind/errors.hpp"

namespace axwind {

double NoiseShape::factor(double frequency_hz) const {
  double colored = 1.0;
  if (corner_hz > 0.0) {
    if (!(frequency_hz > 0.0)) throw DomainError("1/f noise needs a positive frequency");
    colored += std::pow(corner_hz / frequency_hz, exponent);
  }
  return std::sqrt(colored * (1.0 + readout_variance));
}

void NoiseShape::validate() const {
  if (!(corner_hz >= 0.0) || !std::isfinite(corner_hz)) throw ConfigError("noise corner frequency must be >= 0");
  if (!(exponent >= 0.0 && exponent <= 2.0)) throw ConfigError("noise 1/f exponent must lie in [0, 2]");
  if (!(readout_variance >= 0.0) || !std::isfinite(readout_variance))
    throw ConfigError("readout variance must be >= 0");
}

NoiseModel NoiseModel::from_stack(const SensorStack& stack, const NoiseShape& shape, std::uint64_t seed) {
  NoiseModel model{stack.noise_electron, stack.noise_nuclear, shape, seed};
  model.validate();
  return model;
}

void NoiseModel::validate() const {
  if (!(floor_electron > 0.0) || !std::isfinite(floor_electron)) throw ConfigError("electron noise floor must be > 0");
  if (!(floor_nuclear > 0.0) || !std::isfinite(floor_nuclear)) throw ConfigError("nuclear noise floor must be > 0");
  shape.validate();
}

double white_noise_sigma(double eta, double dt) {
  if (!(dt > 0.0)) throw DomainError("sampling step must be > 0");
  return eta / std::sqrt(2.0 * dt);
}

std::string_view to_string(Channel channel) {
  switch (channel) {
    case Channel::Electron: return "electron";
    case Channel::Nuclear: return "nuclear";
    case Channel::InductiveBaseline: return "inductive";
  }
  return "?";
}

Integration effective_integration(double t2, double tau_a, double t_obs) {
  if (!(t2 > 0.0) || !(tau_a > 0.0) || !(t_obs > 0.0)) throw DomainError("integration times must be > 0");
  const double t_coh = std::min({t2, tau_a, t_obs});
  return {t_coh, std::max(1.0, std::floor(t_obs / t_coh))};
}

double StackingRule::gain(double stacking) const {
  return stacking > 1.0 ? std::pow(stacking, exponent) : 1.0;
}

double StackingRule::effective_time(const Integration& integration) const {
  const double g = gain(integration.stacking);
  return integration.t_coh * g * g;
}

SnrBudget channel_snr(Channel channel, double field, double noise_floor, const Integration& integration,
                      const StackingRule& rule, const InductiveReference& inductive) {
  if (!(noise_floor > 0.0)) throw DomainError("noise floor must be > 0");
  double signal = std::abs(field);
  if (channel == Channel::InductiveBaseline) {
    if (!(inductive.omega_a > 0.0) || !(inductive.omega_ref > 0.0))
      throw DomainError("inductive baseline needs positive w_a and w_ref");
    signal *= inductive.omega_a / inductive.omega_ref;
  }
  const double per_segment = signal * std::sqrt(integration.t_coh) / noise_floor;
  return {channel, integration.t_coh, integration.stacking, per_segment, per_segment * rule.gain(integration.stacking)};
}

double snr_ratio_literal(double hybrid_gain, double noise_nuclear, double noise_electron, double t_eff_electron,
                         double t_eff_nuclear) {
  return hybrid_gain * (noise_nuclear / noise_electron) * std::sqrt(t_eff_electron / t_eff_nuclear);
}

double snr_ratio(const SensorStack& stack, double omega_a, const HaloModel& halo, const StackingRule& rule) {
  stack.validate();
  const double tau_a = coherence_time_from_omega(omega_a, halo);
  const Integration e = effective_integration(stack.t2_electron, tau_a, stack.t_obs);
  const Integration n = effective_integration(stack.t2_nuclear, tau_a, stack.t_obs);
  return snr_ratio_literal(hybrid_gain(stack, omega_a), stack.noise_nuclear, stack.noise_electron,
                           rule.effective_time(e), rule.effective_time(n));
}

PowerSpectrum psd(const TimeSeries& series, dsp::Window window) {
  series.validate();
  const std::size_t n = series.size();
  if (n < 16) throw ResolutionError("PSD needs at least 16 samples");
  const std::vector<double> w = dsp::window(window, n);
  std::vector<double> xw(n);
  for (std::size_t i = 0; i < n; ++i) xw[i] = series.samples[i] * w[i];
  const auto spectrum = dsp::rfft(xw);

  PowerSpectrum out;
  out.df = 1.0 / (static_cast<double>(n) * series.dt);
  const double norm = 1.0 / (static_cast<double>(n) * static_cast<double>(n));
  out.frequency_hz.resize(spectrum.size());
  out.density.resize(spectrum.size());
  for (std::size_t k = 0; k < spectrum.size(); ++k) {
    const bool unpaired = k == 0 || (n % 2 == 0 && k == n / 2);
    const double power = std::norm(spectrum[k]) * norm * (unpaired ? 1.0 : 2.0);
    out.frequency_hz[k] = static_cast<double>(k) * out.df;
    out.density[k] = power / out.df;
  }
  return out;
}

double matched_filter_snr(std::span<const double> series, std::span<const double> templ, double sigma) {
  if (series.size() != templ.size()) throw ConfigError("matched filter template length differs from the series");
  if (!(sigma > 0.0)) throw DomainError("matched filter needs sigma > 0");
  const double dot = std::inner_product(series.begin(), series.end(), templ.begin(), 0.0);
  const double norm = std::sqrt(std::inner_product(templ.begin(), templ.end(), templ.begin(), 0.0));
  if (!(norm > 0.0)) throw DomainError("matched filter template is identically zero");
  return std::abs(dot) / (sigma * norm);
}

double matched_filter_snr(const TimeSeries& series, const TimeSeries& templ, const NoiseModel& noise) {
  series.validate();
  if (templ.dt != series.dt) throw ConfigError("matched filter template has a different sampling step");
  return matched_filter_snr(series.samples, templ.samples, white_noise_sigma(noise.floor_electron, series.dt));
}

std::complex<double> matched_filter_output(std::span<const std::complex<double>> envelope,
                                           std::span<const std::complex<double>> templ, double sigma) {
  if (envelope.size() != templ.size()) throw ConfigError("matched filter template length differs from the series");
  if (!(sigma > 0.0)) throw DomainError("matched filter needs sigma > 0");
  std::complex<double> dot{};
  double norm2 = 0.0;
  for (std::size_t i = 0; i < envelope.size(); ++i) {
    dot += std::conj(templ[i]) * envelope[i];
    norm2 += std::norm(templ[i]);
  }
  if (!(norm2 > 0.0)) throw DomainError("matched filter template is identically zero");
  return dot / (sigma * std::sqrt(norm2));
}

}  // namespace axwind
