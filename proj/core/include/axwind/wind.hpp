/**
 * @file wind.hpp
 * @brief Lab-frame kinematics of the axion wind.
 *
 * Geometry lives in an equatorial frame aligned with Earth's rotation axis.
 * The galactic-to-equatorial rotation is folded into WindDirection, so no
 * ephemeris is computed here.
 */
#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "axwind/constants.hpp"
#include "axwind/dsp.hpp"
#include "axwind/physics.hpp"
#include "axwind/series.hpp"

namespace axwind {

/// Equatorial orientation of the quantization axis at t = 0.
struct AxisOrientation {
  double colatitude;  ///< angle from Earth's rotation axis
  double hour_angle;  ///< azimuth about the rotation axis, added to the sidereal phase
};

struct LabSite {
  double latitude = 0.0;      ///< rad, [-pi/2, pi/2]
  double axis_tilt = 0.0;     ///< quantization axis angle from local vertical, rad
  double axis_azimuth = 0.0;  ///< azimuth of the tilt, from north towards east, rad

  void validate() const;
  AxisOrientation axis() const;
};

struct WindDirection {
  double polar = 0.25 * kTwoPi;  ///< theta_a, angle from Earth's rotation axis
  double phase = 0.0;            ///< phi_0

  static WindDirection from_unit_vector(const std::array<double, 3>& u);
  std::array<double, 3> unit() const;
  void validate() const;
};

/// cos(theta_z) cos(theta_a) + sin(theta_z) sin(theta_a) cos(W t + phi_0 + hour angle).
double lab_projection(double t, const LabSite& site, const WindDirection& dir, double sidereal_rate = kSiderealRate);
double lab_projection(double t, const AxisOrientation& axis, const WindDirection& dir,
                      double sidereal_rate = kSiderealRate);

/// 1 + eps cos(W_year t + phase).
double annual_velocity_factor(double t, const HaloModel& halo, double annual_rate = kAnnualRate,
                              double annual_phase = 0.0);

struct WindOptions {
  double start = 0.0;
  double sidereal_rate = kSiderealRate;
  double annual_rate = kAnnualRate;
  double annual_phase = 0.0;
  /// Redraw the carrier phase at exponentially spaced epochs of mean tau_a.
  bool phase_renewal = true;
  unsigned threads = 1;
};

/// Renewal epochs of the stochastic carrier phase over [start, start + duration).
class PhaseEpochs {
 public:
  PhaseEpochs(double coherence_time, double start, double duration, std::uint64_t seed, bool renewal);

  double phase_at(double t) const;
  std::size_t count() const { return phases_.size(); }
  const std::vector<double>& boundaries() const { return boundaries_; }

 private:
  std::vector<double> boundaries_;  ///< start time of epoch k
  std::vector<double> phases_;
};

/// B_{a,z}(t) = B_{a,0} (1 + eps cos W_y t) proj(t) cos(w_a t + phi_k).
/// Requires dt < pi / w_a.
TimeSeries wind_field_series(double g_ann, double mass_ev, const HaloModel& halo, const IsotopeParams& isotope,
                             const LabSite& site, const WindDirection& dir, double duration, double dt,
                             std::uint64_t seed, const WindOptions& options = {});

/// Complex baseband envelope of the same field (carrier removed); no Nyquist limit on the carrier.
EnvelopeSeries wind_envelope_series(double g_ann, double mass_ev, const HaloModel& halo,
                                    const IsotopeParams& isotope, const LabSite& site, const WindDirection& dir,
                                    double duration, double dt, std::uint64_t seed, const WindOptions& options = {});

struct SpectralLine {
  double omega;      ///< rad/s, >= 0
  double amplitude;  ///< cosine amplitude (both sidebands of the complex envelope summed)
};

struct ModulationSpectrum {
  std::vector<double> omega;      ///< one-sided grid, rad/s
  std::vector<double> amplitude;  ///< folded amplitude on that grid
  std::vector<SpectralLine> lines;  ///< detected peaks, strongest first
  double bin_width = 0.0;          ///< rad/s
  bool sidereal_resolved = false;
  bool annual_resolved = false;
};

struct SpectrumOptions {
  dsp::Window window = dsp::Window::Hann;
  bool require_annual = false;
  /// Samples per demodulation block; 0 picks about one carrier period.
  std::size_t decimation = 0;
  double relative_threshold = 1e-6;
  double sidereal_rate = kSiderealRate;
  double annual_rate = kAnnualRate;
};

/// Complex mixer at exactly w_a followed by block-average decimation.
/// The mixer frequency must match the carrier to better than 1/(10 duration).
EnvelopeSeries demodulate(const TimeSeries& series, double omega_a, std::size_t decimation = 0);

ModulationSpectrum envelope_spectrum(const EnvelopeSeries& envelope, const SpectrumOptions& options = {});

ModulationSpectrum modulation_spectrum(const TimeSeries& series, double omega_a, const SpectrumOptions& options = {});

}  // namespace axwind
