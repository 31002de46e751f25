#include "axwind/wind.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "axwind/errors.hpp"
#include "axwind/parallel.hpp"
#include "axwind/random.hpp"

namespace axwind {
namespace {

enum StreamPurpose : std::uint32_t { kEpochPhase = 0x57494E44u, kEpochSpacing = 0x57494E45u };

void check_synthesis(double duration, double dt) {
  if (!(duration > 0.0) || !std::isfinite(duration)) throw ConfigError("wind series duration must be > 0");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("wind series dt must be > 0");
  if (duration / dt < 2.0) throw ConfigError("wind series needs at least 2 samples");
}

// Amplitude profile shared by the carrier and envelope synthesizers.
struct Profile {
  double amplitude;
  const HaloModel& halo;
  AxisOrientation axis;
  const WindDirection& dir;
  const WindOptions& options;

  double operator()(double t) const {
    return amplitude * annual_velocity_factor(t, halo, options.annual_rate, options.annual_phase) *
           lab_projection(t, axis, dir, options.sidereal_rate);
  }
};

}  // namespace

void LabSite::validate() const {
  if (!(std::abs(latitude) <= 0.25 * kTwoPi)) throw DomainError("site latitude must lie in [-pi/2, pi/2]");
  if (!std::isfinite(axis_tilt) || !std::isfinite(axis_azimuth)) throw DomainError("site axis angles must be finite");
}

AxisOrientation LabSite::axis() const {
  validate();
  // Local east/north/up at longitude 0 expressed in the Earth-fixed equatorial frame.
  const double cl = std::cos(latitude);
  const double sl = std::sin(latitude);
  const double ct = std::cos(axis_tilt);
  const double st = std::sin(axis_tilt);
  const double x = ct * cl - st * std::cos(axis_azimuth) * sl;
  const double y = st * std::sin(axis_azimuth);
  const double z = ct * sl + st * std::cos(axis_azimuth) * cl;
  return {std::acos(std::clamp(z, -1.0, 1.0)), std::atan2(y, x)};
}

WindDirection WindDirection::from_unit_vector(const std::array<double, 3>& u) {
  const double norm = std::sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
  if (!(std::abs(norm - 1.0) <= 1e-12)) throw DomainError("wind direction must be a unit vector");
  return {std::acos(std::clamp(u[2], -1.0, 1.0)), std::atan2(u[1], u[0])};
}

std::array<double, 3> WindDirection::unit() const {
  return {std::sin(polar) * std::cos(phase), std::sin(polar) * std::sin(phase), std::cos(polar)};
}

void WindDirection::validate() const {
  if (!std::isfinite(polar) || !std::isfinite(phase)) throw DomainError("wind direction angles must be finite");
}

double lab_projection(double t, const LabSite& site, const WindDirection& dir, double sidereal_rate) {
  dir.validate();
  return lab_projection(t, site.axis(), dir, sidereal_rate);
}

double lab_projection(double t, const AxisOrientation& axis, const WindDirection& dir, double sidereal_rate) {
  return std::cos(axis.colatitude) * std::cos(dir.polar) +
         std::sin(axis.colatitude) * std::sin(dir.polar) * std::cos(sidereal_rate * t + dir.phase + axis.hour_angle);
}

double annual_velocity_factor(double t, const HaloModel& halo, double annual_rate, double annual_phase) {
  return 1.0 + halo.annual_depth * std::cos(annual_rate * t + annual_phase);
}

PhaseEpochs::PhaseEpochs(double coherence_time, double start, double duration, std::uint64_t seed, bool renewal) {
  const auto draw_phase = [seed](std::uint32_t k) {
    return kTwoPi * RandomStream(seed, stream_id(kEpochPhase, k)).uniform();
  };
  boundaries_.push_back(start);
  phases_.push_back(draw_phase(0));
  if (!renewal) return;
  const double end = start + duration;
  double t = start;
  for (std::uint32_t k = 0;; ++k) {
    t += RandomStream(seed, stream_id(kEpochSpacing, k)).exponential(coherence_time);
    if (t >= end) break;
    if (k + 1 == 0) throw ConfigError("too many coherence epochs; shorten the series");
    boundaries_.push_back(t);
    phases_.push_back(draw_phase(k + 1));
  }
}

double PhaseEpochs::phase_at(double t) const {
  const auto it = std::upper_bound(boundaries_.begin(), boundaries_.end(), t);
  const std::size_t k = it == boundaries_.begin() ? 0 : static_cast<std::size_t>(it - boundaries_.begin()) - 1;
  return phases_[k];
}

TimeSeries wind_field_series(double g_ann, double mass_ev, const HaloModel& halo, const IsotopeParams& isotope,
                             const LabSite& site, const WindDirection& dir, double duration, double dt,
                             std::uint64_t seed, const WindOptions& options) {
  check_synthesis(duration, dt);
  const double omega = axion_angular_frequency(mass_ev);
  if (!(dt < std::numbers::pi / omega)) {
    std::ostringstream msg;
    msg.imbue(std::locale::classic());
    msg << "wind series dt = " << dt << " s violates the carrier Nyquist limit; need dt < " << std::numbers::pi / omega
        << " s";
    throw ConfigError(msg.str());
  }
  dir.validate();
  const Profile profile{axion_field_amplitude(g_ann, halo, isotope), halo, site.axis(), dir, options};
  const PhaseEpochs epochs(axion_coherence_time(mass_ev, halo), options.start, duration, seed, options.phase_renewal);

  TimeSeries out;
  out.start = options.start;
  out.dt = dt;
  out.label = "B_az [T]";
  out.samples.resize(static_cast<std::size_t>(std::floor(duration / dt)));
  parallel_for(out.samples.size(), options.threads, [&](std::size_t i) {
    const double t = out.time(i);
    out.samples[i] = profile(t) * std::cos(omega * t + epochs.phase_at(t));
  });
  return out;
}

EnvelopeSeries wind_envelope_series(double g_ann, double mass_ev, const HaloModel& halo,
                                    const IsotopeParams& isotope, const LabSite& site, const WindDirection& dir,
                                    double duration, double dt, std::uint64_t seed, const WindOptions& options) {
  check_synthesis(duration, dt);
  dir.validate();
  const Profile profile{axion_field_amplitude(g_ann, halo, isotope), halo, site.axis(), dir, options};
  const PhaseEpochs epochs(axion_coherence_time(mass_ev, halo), options.start, duration, seed, options.phase_renewal);

  EnvelopeSeries out;
  out.start = options.start;
  out.dt = dt;
  out.label = "B_az envelope [T]";
  out.samples.resize(static_cast<std::size_t>(std::floor(duration / dt)));
  parallel_for(out.samples.size(), options.threads, [&](std::size_t i) {
    const double t = out.time(i);
    out.samples[i] = std::polar(profile(t), epochs.phase_at(t));
  });
  return out;
}

EnvelopeSeries demodulate(const TimeSeries& series, double omega_a, std::size_t decimation) {
  series.validate();
  if (!(omega_a > 0.0)) throw DomainError("demodulation frequency must be > 0");
  if (decimation == 0) {
    decimation = static_cast<std::size_t>(std::max(1.0, std::round(kTwoPi / (omega_a * series.dt))));
  }
  const std::size_t blocks = series.size() / decimation;
  if (blocks < 2) throw ResolutionError("series too short for the requested decimation");
  EnvelopeSeries env;
  env.dt = series.dt * static_cast<double>(decimation);
  env.start = series.start + 0.5 * static_cast<double>(decimation - 1) * series.dt;
  env.label = series.label + " envelope";
  env.samples.resize(blocks);
  const double scale = 2.0 / static_cast<double>(decimation);
  for (std::size_t b = 0; b < blocks; ++b) {
    std::complex<double> acc = 0.0;
    for (std::size_t j = b * decimation; j < (b + 1) * decimation; ++j) {
      acc += series.samples[j] * std::polar(1.0, -omega_a * series.time(j));
    }
    env.samples[b] = scale * acc;
  }
  return env;
}

ModulationSpectrum envelope_spectrum(const EnvelopeSeries& envelope, const SpectrumOptions& options) {
  envelope.validate();
  const double duration = envelope.duration();
  const double sidereal_span = 2.0 * kTwoPi / options.sidereal_rate;
  const double annual_span = 2.0 * kTwoPi / options.annual_rate;
  if (duration < sidereal_span) {
    std::ostringstream msg;
    msg.imbue(std::locale::classic());
    msg << "series of " << duration << " s cannot resolve the sidereal line; need >= " << sidereal_span << " s";
    throw ResolutionError(msg.str());
  }
  if (options.require_annual && duration < annual_span) {
    std::ostringstream msg;
    msg.imbue(std::locale::classic());
    msg << "series of " << duration << " s cannot resolve annual sidebands; need >= " << annual_span << " s";
    throw ResolutionError(msg.str());
  }

  const std::size_t n = envelope.size();
  const auto w = dsp::window(options.window, n);
  double wsum = 0.0;
  std::vector<std::complex<double>> tapered(n);
  for (std::size_t i = 0; i < n; ++i) {
    tapered[i] = envelope.samples[i] * w[i];
    wsum += w[i];
  }
  const auto spec = dsp::fft(tapered);
  std::vector<double> mag(n);
  for (std::size_t k = 0; k < n; ++k) mag[k] = std::abs(spec[k]) / wsum;

  ModulationSpectrum out;
  out.bin_width = kTwoPi / duration;
  out.sidereal_resolved = true;
  out.annual_resolved = duration >= annual_span;
  const std::size_t half = n / 2;
  out.omega.resize(half + 1);
  out.amplitude.resize(half + 1);
  const auto folded = [&](std::size_t k) {
    if (k == 0 || 2 * k == n) return mag[k];
    return mag[k] + mag[n - k];
  };
  for (std::size_t k = 0; k <= half; ++k) {
    out.omega[k] = out.bin_width * static_cast<double>(k);
    out.amplitude[k] = folded(k);
  }

  // Local maxima of the two-sided magnitude, folded onto |f|.
  const double top = *std::max_element(mag.begin(), mag.end());
  std::vector<bool> taken(half + 1, false);
  for (std::size_t k = 0; k < n; ++k) {
    const double prev = mag[(k + n - 1) % n];
    const double next = mag[(k + 1) % n];
    if (!(mag[k] > prev && mag[k] >= next && mag[k] > options.relative_threshold * top)) continue;
    const std::size_t bin = k <= half ? k : n - k;
    if (taken[bin]) continue;
    taken[bin] = true;
    out.lines.push_back({out.omega[bin], folded(bin)});
  }
  std::sort(out.lines.begin(), out.lines.end(),
            [](const SpectralLine& a, const SpectralLine& b) { return a.amplitude > b.amplitude; });
  return out;
}

ModulationSpectrum modulation_spectrum(const TimeSeries& series, double omega_a, const SpectrumOptions& options) {
  return envelope_spectrum(demodulate(series, omega_a, options.decimation), options);
}

}  // namespace axwind
