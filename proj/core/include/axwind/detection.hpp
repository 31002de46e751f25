/**
 * @file detection.hpp
 * @brief Noise, SNR budgets, spectra and matched filtering.
 *
 * Stacking rule: beyond one coherence time, K = floor(T_obs / T_coh)
 * segments are combined incoherently and the amplitude SNR grows as
 * K^p with p = 1/4 by default. Everything that needs an "effective
 * integration time" uses T_eff = T_coh K^(2p), so the two views agree.
 */
#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "axwind/dsp.hpp"
#include "axwind/physics.hpp"
#include "axwind/series.hpp"
#include "axwind/transduction.hpp"

namespace axwind {

/// Spectral shape shared by both channels: eta(f)^2 = eta^2 (1 + (f_c/f)^alpha) (1 + readout variance).
struct NoiseShape {
  double corner_hz = 0.0;
  double exponent = 1.0;
  double readout_variance = 0.0;

  double factor(double frequency_hz) const;
  void validate() const;
};

struct NoiseModel {
  double floor_electron = 1e-15;  ///< T/sqrt(Hz)
  double floor_nuclear = 1e-12;   ///< T/sqrt(Hz)
  NoiseShape shape;
  std::uint64_t seed = 1;

  static NoiseModel from_stack(const SensorStack& stack, const NoiseShape& shape = {}, std::uint64_t seed = 1);
  void validate() const;
  double electron_at(double frequency_hz) const { return floor_electron * shape.factor(frequency_hz); }
  double nuclear_at(double frequency_hz) const { return floor_nuclear * shape.factor(frequency_hz); }
};

/// Per-sample standard deviation of white noise with one-sided density eta sampled at dt.
double white_noise_sigma(double eta, double dt);

enum class Channel { Electron, Nuclear, InductiveBaseline };
std::string_view to_string(Channel channel);

struct Integration {
  double t_coh;     ///< s
  double stacking;  ///< K >= 1
};

/// T_coh = min(T2, tau_a, T_obs), K = max(1, floor(T_obs / T_coh)).
Integration effective_integration(double t2, double tau_a, double t_obs);

struct StackingRule {
  double exponent = 0.25;
  double gain(double stacking) const;
  double effective_time(const Integration& integration) const;
};

struct SnrBudget {
  Channel channel;
  double t_coh;
  double stacking;
  double per_segment;
  double total;
};

/// Inductive pickup scales the field by w_a / w_ref; only that scaling is meaningful.
struct InductiveReference {
  double omega_a = 0.0;
  double omega_ref = kTwoPi;  ///< 1 Hz
};

SnrBudget channel_snr(Channel channel, double field, double noise_floor, const Integration& integration,
                      const StackingRule& rule = {}, const InductiveReference& inductive = {});

/// SNR_e / SNR_N = G_hyb (eta_N / eta_e) sqrt(T_eff^e / T_eff^N), evaluated literally.
double snr_ratio_literal(double hybrid_gain, double noise_nuclear, double noise_electron, double t_eff_electron,
                         double t_eff_nuclear);

/// The same ratio from a sensor stack; tau_a follows from w_a and the halo.
double snr_ratio(const SensorStack& stack, double omega_a, const HaloModel& halo, const StackingRule& rule = {});

struct PowerSpectrum {
  std::vector<double> frequency_hz;
  std::vector<double> density;  ///< units^2 / Hz, one-sided
  double df = 0.0;
};

/// One-sided periodogram with sum(PSD) df equal to the mean square of the windowed series.
PowerSpectrum psd(const TimeSeries& series, dsp::Window window = dsp::Window::Hann);

/// |<x, t>| / (sigma ||t||).
double matched_filter_snr(std::span<const double> series, std::span<const double> templ, double sigma);
/// sigma from the electron white floor of `noise` at the series' sampling step.
double matched_filter_snr(const TimeSeries& series, const TimeSeries& templ, const NoiseModel& noise);

/// Complex (quadrature) matched filter on a baseband envelope: <t, x> / (sigma ||t||),
/// sigma being the per-component noise standard deviation.
std::complex<double> matched_filter_output(std::span<const std::complex<double>> envelope,
                                           std::span<const std::complex<double>> templ, double sigma);

}  // namespace axwind
