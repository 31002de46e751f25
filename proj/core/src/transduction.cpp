#include "axwind/transduction.hpp"

#include <boost/algorithm/string/predicate.hpp>

#include <cmath>
#include <numbers>
#include <sstream>

#include "axwind/constants.hpp"
#include "axwind/dsp.hpp"
#include "axwind/errors.hpp"
#include "axwind/parallel.hpp"

namespace axwind {

std::string_view to_string(EntanglementModel model) {
  return model == EntanglementModel::Ideal ? "ideal" : "sql";
}

EntanglementModel parse_entanglement_model(std::string_view name) {
  if (boost::iequals(name, "sql")) return EntanglementModel::StandardQuantumLimit;
  if (boost::iequals(name, "ideal")) return EntanglementModel::Ideal;
  throw ConfigError("unknown entanglement model '" + std::string(name) + "' (sql|ideal)");
}

double entanglement_factor(EntanglementModel model, double ensemble_size) {
  if (!(ensemble_size >= 1.0) || !std::isfinite(ensemble_size)) throw DomainError("ensemble size must be >= 1");
  return model == EntanglementModel::Ideal ? ensemble_size : std::sqrt(ensemble_size);
}

double ResonatorModel::gain(double quality_factor) const {
  if (!(quality_factor >= 1.0) || !std::isfinite(quality_factor)) throw DomainError("resonator Q must be >= 1");
  if (!(q_ref > 0.0) || !(exponent >= 0.0)) throw DomainError("resonator model needs q_ref > 0, exponent >= 0");
  return std::pow(quality_factor / q_ref, exponent);
}

SensorStack SensorStack::for_isotope(const IsotopeParams& isotope) {
  SensorStack stack;
  stack.isotope = isotope;
  stack.t2_electron = isotope.t2_electron;
  stack.t2_nuclear = isotope.t2_nuclear;
  stack.sequence = PulseSequence::build(SequenceKind::Ramsey, isotope.t2_nuclear, 0);
  return stack;
}

void SensorStack::validate() const {
  isotope.validate();
  const auto positive = [](double x) { return std::isfinite(x) && x > 0.0; };
  if (!(ensemble_size >= 1.0)) throw DomainError("sensor: ensemble size N must be >= 1");
  if (!(quality_factor >= 1.0)) throw DomainError("sensor: resonator Q must be >= 1");
  if (!positive(drive_gain)) throw DomainError("sensor: G_drv must be > 0");
  if (!positive(dispersive_correction)) throw DomainError("sensor: dispersive correction must be > 0");
  if (!positive(noise_electron) || !positive(noise_nuclear)) throw DomainError("sensor: noise floors must be > 0");
  if (!positive(t2_electron) || !positive(t2_nuclear) || !positive(t_obs)) {
    throw DomainError("sensor: T2e, T2N and T_obs must be > 0");
  }
}

NuclearPhase nuclear_phase(double field, const PulseSequence& seq, double omega_a, const IsotopeParams& isotope) {
  const double phase = std::abs(isotope.gamma_nuclear) * field * filter_magnitude(seq, omega_a);
  return {phase, std::abs(phase) <= kSmallSignalLimit};
}

double iz_shift(double phase, double spin) { return spin * phase; }

double hybrid_gain_from_filter(const IsotopeParams& isotope, double filter_magnitude, double drive_gain,
                               double dispersive_correction) {
  return isotope.hyperfine * isotope.spin / kConstants.gamma_electron * std::abs(isotope.gamma_nuclear) *
         filter_magnitude * drive_gain * dispersive_correction;
}

double hybrid_gain(const SensorStack& stack, double omega_a) {
  return hybrid_gain_from_filter(stack.isotope, filter_magnitude(stack.sequence, omega_a), stack.drive_gain,
                                 stack.dispersive_correction);
}

ElectronSignal electron_fm_deviation(const SensorStack& stack, double field, double omega_a) {
  if (!(omega_a > 0.0)) throw DomainError("modulation frequency must be > 0");
  if (!(field >= 0.0)) throw DomainError("field amplitude must be >= 0");
  const double a_eff = stack.isotope.hyperfine * stack.drive_gain;
  const double deviation = a_eff * stack.isotope.spin * std::abs(stack.isotope.gamma_nuclear) *
                           filter_magnitude(stack.sequence, omega_a) * field * stack.dispersive_correction;
  return {deviation, omega_a, deviation / omega_a, deviation / kConstants.gamma_electron};
}

double effective_electron_field(const SensorStack& stack, double field, double omega_a) {
  return stack.entanglement_gain() * stack.resonator_gain() * hybrid_gain(stack, omega_a) * field;
}

std::vector<Sideband> fm_sideband_amplitudes(double beta, int n_max) {
  if (n_max < 1) throw DomainError("n_max must be >= 1");
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw DomainError("modulation index must be finite and >= 0");
  std::vector<Sideband> out;
  out.reserve(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) out.push_back({n, std::cyl_bessel_j(static_cast<double>(n), beta)});
  return out;
}

TimeSeries spin_lock_series(double rabi, double omega_a, double deviation, double duration, double dt,
                            unsigned threads) {
  if (!(rabi > 0.0) || !(omega_a > 0.0) || !(deviation >= 0.0)) {
    throw DomainError("spin lock needs W_R > 0, w_a > 0, delta w >= 0");
  }
  if (!(duration > 0.0) || !(dt > 0.0)) throw ConfigError("spin lock needs duration > 0 and dt > 0");
  const double rabi_period = kTwoPi / rabi;
  if (dt > rabi_period / 10.0) {
    std::ostringstream msg;
    msg.imbue(std::locale::classic());
    msg << "spin lock dt = " << dt << " s gives fewer than 10 samples per Rabi period; need dt <= "
        << rabi_period / 10.0 << " s";
    throw ConfigError(msg.str());
  }
  const double beta = deviation / omega_a;
  TimeSeries out;
  out.dt = dt;
  out.label = "<S_x>";
  out.samples.resize(static_cast<std::size_t>(std::llround(duration / dt)));
  parallel_for(out.samples.size(), threads, [&](std::size_t i) {
    const double t = out.time(i);
    out.samples[i] = 0.5 * std::cos(rabi * t + beta * std::sin(omega_a * t));
  });
  return out;
}

std::vector<double> demodulated_phase(const TimeSeries& series, double rabi) {
  series.validate();
  const auto z = dsp::analytic_signal(series.samples);
  std::vector<double> phase(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    phase[i] = std::arg(z[i] * std::polar(1.0, -rabi * series.time(i)));
  }
  return phase;
}

}  // namespace axwind
