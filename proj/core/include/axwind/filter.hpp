/**
 * @file filter.hpp
 * @brief Pulse sequences, toggling functions and their spectral filters.
 *
 * Convention: Y(w) = integral_0^tau y(t) exp(i w t) dt, pulses instantaneous.
 * CPMG pulse k (1-based) sits at (k - 1/2) tau / N_pi; Hahn is the N_pi = 1
 * case and XY8 shares CPMG timing (its phase pattern does not change y(t)).
 */
#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace axwind {

enum class SequenceKind { Ramsey, Hahn, Cpmg, Xy8 };

std::string_view to_string(SequenceKind kind);
SequenceKind parse_sequence_kind(std::string_view name);

/// One constant-sign interval of a toggling function.
struct Segment {
  double start;
  double end;
  int sign;
};

class PulseSequence {
 public:
  /// Throws ConfigError when N_pi does not fit the kind (0, 1, >= 1, multiple of 8).
  static PulseSequence build(SequenceKind kind, double tau, std::uint64_t n_pi);

  SequenceKind kind() const { return kind_; }
  double duration() const { return tau_; }
  std::uint64_t pulse_count() const { return n_pi_; }

  /// Time of pulse k, 1 <= k <= pulse_count().
  double pulse_time(std::uint64_t k) const;
  std::vector<double> pulse_times() const;

  std::uint64_t segment_count() const { return n_pi_ + 1; }
  Segment segment(std::uint64_t i) const;

  /// y(t): +1 before the first pulse, flips sign at each pulse, 0 outside [0, tau].
  int toggling(double t) const;

  std::string describe() const;

 private:
  PulseSequence(SequenceKind kind, double tau, std::uint64_t n_pi) : kind_(kind), tau_(tau), n_pi_(n_pi) {}

  SequenceKind kind_;
  double tau_;
  std::uint64_t n_pi_;
};

struct FilterResponse {
  std::vector<double> omega;  ///< rad/s, strictly increasing
  std::vector<std::complex<double>> values;  ///< s
  std::vector<double> magnitude;  ///< s
  std::string descriptor;
  std::string convention = "Y(w)=int_0^tau y(t) exp(+i w t) dt";
};

struct PassbandReport {
  double center_hz = 0.0;
  double fwhm_hz = 0.0;
  double quality = 0.0;  ///< center / FWHM; 0 for a low-pass response
  double peak = 0.0;     ///< s
};

/// Uniform grid w = 2 pi xi / tau for xi in [0, xi_max], `points` samples.
std::vector<double> xi_grid(double tau, double xi_max, std::size_t points);

/// Exact value of the transform: sum of closed-form segment integrals.
std::complex<double> filter_value(const PulseSequence& seq, double omega);

/// Piecewise-exact transform on a grid; the reference every closed form is tested against.
FilterResponse filter_numeric(const PulseSequence& seq, std::span<const double> omega, unsigned threads = 1);

/// tau |sinc(w tau / 2)|.
double filter_analytic_ramsey(double tau, double omega);

/// Closed form for Hahn/CPMG/XY8: cell envelope times a Dirichlet kernel.
double filter_analytic_echo_family(const PulseSequence& seq, double omega);

/// Dispatches to the Ramsey or echo-family closed form.
double filter_magnitude(const PulseSequence& seq, double omega);

/// Same machinery applied to the electron probe's toggling function.
FilterResponse electron_filter(const PulseSequence& probe, std::span<const double> omega, unsigned threads = 1);

/// |F|^2 / tau^2 for plotting.
std::vector<double> normalized_power(const FilterResponse& response, double tau);

/// H(w) = F_e(w) Y_N(w) on identical grids.
FilterResponse combined_response(const FilterResponse& electron, const FilterResponse& nuclear);

/// Main-lobe centre, FWHM and Q of |Y|. Needs >= 8 grid points across the FWHM.
PassbandReport passband_analysis(const FilterResponse& response);

/// sin(pi x) with exact zeros at integers.
double sin_pi(double x);

}  // namespace axwind
