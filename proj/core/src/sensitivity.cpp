#include "axwind/sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "axwind/errors.hpp"
#include "axwind/parallel.hpp"

namespace axwind {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

// Golden-section maximisation of f on [a, b] after a coarse grid picks the bracket.
template <class F>
double maximise(F f, double a, double b, int grid = 400) {
  double best_x = a;
  double best = -1.0;
  const double step = (b - a) / grid;
  for (int i = 0; i <= grid; ++i) {
    const double x = a + step * i;
    const double v = f(x);
    if (v > best) {
      best = v;
      best_x = x;
    }
  }
  double lo = std::max(a, best_x - step);
  double hi = std::min(b, best_x + step);
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - r * (hi - lo);
  double x2 = lo + r * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int it = 0; it < 80 && hi - lo > 1e-14 * std::abs(hi); ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + r * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - r * (hi - lo);
      f1 = f(x1);
    }
  }
  return std::max({best, f1, f2});
}

}  // namespace

std::string_view to_string(Protocol protocol) {
  switch (protocol) {
    case Protocol::Ramsey: return "ramsey";
    case Protocol::Hahn: return "hahn";
    case Protocol::Xy8: return "xy8";
    case Protocol::SpinLock: return "spinlock";
  }
  return "?";
}

Protocol parse_protocol(std::string_view name) {
  const std::string n = lower(name);
  if (n == "ramsey") return Protocol::Ramsey;
  if (n == "hahn" || n == "echo") return Protocol::Hahn;
  if (n == "xy8") return Protocol::Xy8;
  if (n == "spinlock" || n == "spin-lock" || n == "spin_lock") return Protocol::SpinLock;
  throw ConfigError("unknown protocol '" + std::string(name) + "' (expected ramsey, hahn, xy8 or spinlock)");
}

std::vector<Protocol> parse_protocol_list(std::string_view comma_separated) {
  std::vector<Protocol> out;
  std::size_t pos = 0;
  while (pos <= comma_separated.size()) {
    const std::size_t end = std::min(comma_separated.find(',', pos), comma_separated.size());
    std::string_view item = comma_separated.substr(pos, end - pos);
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.front()))) item.remove_prefix(1);
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back()))) item.remove_suffix(1);
    if (!item.empty()) {
      const Protocol p = parse_protocol(item);
      if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
    }
    pos = end + 1;
  }
  if (out.empty()) throw ConfigError("protocol list is empty");
  return out;
}

double echo_family_peak(const PulseSequence& seq) {
  if (seq.kind() == SequenceKind::Ramsey) return seq.duration();
  const double n = static_cast<double>(seq.pulse_count());
  const double cell = seq.duration() / n;
  // Main lobe of the Dirichlet factor sits at u = w cell / 2 pi = 1/2.
  const double u_lo = n == 1.0 ? 0.05 : 0.5 - 1.0 / n;
  const double u_hi = n == 1.0 ? 1.5 : 0.5 + 1.0 / n;
  const auto mag = [&](double u) { return filter_analytic_echo_family(seq, kTwoPi * u / cell); };
  return maximise(mag, u_lo, u_hi);
}

ProtocolChoice match_protocol(Protocol protocol, double omega_a, double t2_nuclear, const ProtocolLimits& limits) {
  if (!(omega_a > 0.0) || !std::isfinite(omega_a)) throw DomainError("w_a must be > 0");
  if (!(t2_nuclear > 0.0)) throw DomainError("T2N must be > 0");
  ProtocolChoice c;
  c.protocol = protocol;
  const double pi = std::numbers::pi;
  switch (protocol) {
    case Protocol::Ramsey: {
      c.tau = std::min(t2_nuclear, pi / omega_a);
      c.sequence = PulseSequence::build(SequenceKind::Ramsey, c.tau, 0);
      c.passband_peak = c.tau;
      break;
    }
    case Protocol::Hahn: {
      c.tau = std::min(t2_nuclear, 2.0 * pi / omega_a);
      c.n_pi = 1;
      c.sequence = PulseSequence::build(SequenceKind::Hahn, c.tau, 1);
      c.passband_peak = echo_family_peak(*c.sequence);
      break;
    }
    case Protocol::Xy8: {
      const double k_max = std::floor(limits.max_pi_pulses / 8.0);
      if (k_max < 1.0) throw ConfigError("pulse budget is below one XY8 block");
      const double k = std::min(std::floor(omega_a * t2_nuclear / (8.0 * pi)), k_max);
      if (k >= 1.0) {
        c.n_pi = static_cast<std::uint64_t>(8.0 * k);
        c.tau = pi * 8.0 * k / omega_a;
      } else {
        // Too slow for one block within T2N: the passband sits above w_a.
        c.n_pi = 8;
        c.tau = t2_nuclear;
      }
      c.sequence = PulseSequence::build(SequenceKind::Xy8, c.tau, c.n_pi);
      c.passband_peak = echo_family_peak(*c.sequence);
      break;
    }
    case Protocol::SpinLock: {
      c.tau = t2_nuclear;
      c.filter_magnitude = 1.0 / std::hypot(omega_a, 1.0 / t2_nuclear);
      c.passband_peak = t2_nuclear;
      c.in_band = omega_a < limits.rabi;
      return c;
    }
  }
  c.filter_magnitude = filter_magnitude(*c.sequence, omega_a);
  c.in_band = c.filter_magnitude >= 0.5 * c.passband_peak;
  return c;
}

double coupling_threshold(const ChainInputs& chain) {
  const double per_g = chain.entanglement_gain * chain.resonator_gain * chain.hybrid_gain * chain.field_per_coupling *
                       std::sqrt(chain.integration.t_coh) * chain.stacking.gain(chain.integration.stacking);
  if (!(per_g > 0.0) || !std::isfinite(per_g)) throw DomainError("signal chain has zero or non-finite gain");
  return chain.sigma * chain.noise_floor / per_g;
}

bool SensitivityPoint::has_flag(std::string_view flag) const {
  return std::find(flags.begin(), flags.end(), flag) != flags.end();
}

SensitivityPoint five_sigma_threshold(double mass_ev, const SensorStack& stack, Protocol protocol,
                                      const HaloModel& halo, const DetectionSettings& settings) {
  stack.validate();
  settings.noise_shape.validate();
  const double omega = axion_angular_frequency(mass_ev);
  const double tau_a = coherence_time_from_omega(omega, halo);
  const ProtocolChoice choice = match_protocol(protocol, omega, stack.t2_nuclear, settings.limits);

  SensitivityPoint p;
  p.mass_ev = mass_ev;
  p.omega_a = omega;
  p.protocol = std::string(to_string(protocol));
  p.tau = choice.tau;
  p.n_pi = choice.n_pi;
  p.filter_magnitude = choice.filter_magnitude;
  p.hybrid_gain = hybrid_gain_from_filter(stack.isotope, choice.filter_magnitude, stack.drive_gain,
                                          stack.dispersive_correction);

  const Integration e = effective_integration(stack.t2_electron, tau_a, stack.t_obs);
  const Integration n = effective_integration(stack.t2_nuclear, tau_a, stack.t_obs);
  p.t_coh = e.t_coh;
  p.stacking = e.stacking;

  const double f_hz = units::rad_to_hz(omega);
  const double eta_e = stack.noise_electron * settings.noise_shape.factor(f_hz);
  const double eta_n = stack.noise_nuclear * settings.noise_shape.factor(f_hz);
  const double dbdg = axion_field_amplitude(1.0, halo, stack.isotope);
  p.g5 = coupling_threshold({stack.entanglement_gain(), stack.resonator_gain(), p.hybrid_gain, dbdg, eta_e, e,
                             settings.stacking, settings.sigma});
  p.g_an = dimensionless_coupling(p.g5);
  p.hybrid_over_nuclear = snr_ratio_literal(p.hybrid_gain, eta_n, eta_e, settings.stacking.effective_time(e),
                                            settings.stacking.effective_time(n));

  if (!choice.in_band) p.flags.emplace_back("out_of_band");
  if (protocol == Protocol::Xy8 && static_cast<double>(choice.n_pi) + 8.0 > settings.limits.max_pi_pulses)
    p.flags.emplace_back("pulse_limit");
  const double phase = std::abs(stack.isotope.gamma_nuclear) * dbdg * p.g5 * choice.filter_magnitude;
  if (phase > kSmallSignalLimit) p.flags.emplace_back("large_signal");
  return p;
}

ScanResult sensitivity_scan(std::span<const double> masses, std::span<const Protocol> protocols,
                            const SensorStack& stack, const HaloModel& halo, const DetectionSettings& settings,
                            unsigned threads) {
  if (masses.empty()) throw ConfigError("mass grid is empty");
  if (protocols.empty()) throw ConfigError("no protocols requested");
  if (!std::is_sorted(masses.begin(), masses.end())) throw ConfigError("mass grid must be ascending");

  ScanResult out;
  for (Protocol p : protocols) {
    SensitivityCurve curve{std::string(to_string(p)), {}};
    curve.points.resize(masses.size());
    out.curves.push_back(std::move(curve));
  }
  parallel_for(masses.size(), threads, [&](std::size_t i) {
    for (std::size_t j = 0; j < protocols.size(); ++j)
      out.curves[j].points[i] = five_sigma_threshold(masses[i], stack, protocols[j], halo, settings);
  });

  out.envelope.name = "envelope";
  for (std::size_t i = 0; i < masses.size(); ++i) {
    const SensitivityPoint* best = nullptr;
    for (const auto& curve : out.curves) {
      const SensitivityPoint& p = curve.points[i];
      const bool better_band = best && best->out_of_band() && !p.out_of_band();
      const bool same_band = !best || best->out_of_band() == p.out_of_band();
      if (!best || better_band || (same_band && p.g5 < best->g5)) best = &p;
    }
    out.envelope.points.push_back(*best);
  }
  return out;
}

std::vector<double> log_mass_grid(double lo, double hi, double points_per_decade) {
  if (!(lo > 0.0) || !(hi >= lo) || !std::isfinite(hi)) throw ConfigError("mass range must satisfy 0 < min <= max");
  if (!(points_per_decade > 0.0)) throw ConfigError("points per decade must be > 0");
  const double decades = std::log10(hi / lo);
  const auto steps = static_cast<std::size_t>(std::max(0.0, std::round(decades * points_per_decade)));
  std::vector<double> out(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i)
    out[i] = steps == 0 ? lo : lo * std::pow(10.0, decades * static_cast<double>(i) / static_cast<double>(steps));
  out.front() = lo;
  if (steps > 0) out.back() = hi;
  return out;
}

}  // namespace axwind
