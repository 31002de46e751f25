/**
 * @file transduction.hpp
 * @brief Hyperfine upconversion: nuclear phase -> electron frequency modulation.
 *
 * The dispersive effective Hamiltonian (w_e + A I_z) S_z + w_N I_z is taken
 * as given; its leading correction enters only through the scalar
 * `dispersive_correction` (kappa).
 */
#pragma once

#include <vector>

#include "axwind/constants.hpp"
#include "axwind/filter.hpp"
#include "axwind/physics.hpp"
#include "axwind/series.hpp"

namespace axwind {

enum class EntanglementModel { StandardQuantumLimit, Ideal };

std::string_view to_string(EntanglementModel model);
EntanglementModel parse_entanglement_model(std::string_view name);

/// F_ent(N): sqrt(N) at the SQL, N for an ideal fully entangled state.
double entanglement_factor(EntanglementModel model, double ensemble_size);

/// G_res = (Q / Q_ref)^p. The form is a placeholder scale factor, not a resonator model.
struct ResonatorModel {
  double q_ref = 1.0;
  double exponent = 0.5;
  double gain(double quality_factor) const;
};

struct SensorStack {
  IsotopeParams isotope;
  PulseSequence sequence = PulseSequence::build(SequenceKind::Ramsey, 1.0, 0);
  double drive_gain = 1.0;             ///< G_drv
  double dispersive_correction = 1.0;  ///< kappa = 1 + O(A / 2 Delta)
  double ensemble_size = 1.0;          ///< N
  EntanglementModel entanglement = EntanglementModel::StandardQuantumLimit;
  double quality_factor = 1.0;         ///< Q
  ResonatorModel resonator;
  double noise_electron = 1e-15;       ///< eta_B^(e), T/sqrt(Hz)
  double noise_nuclear = 1e-12;        ///< eta_B^(N), T/sqrt(Hz)
  double t2_electron = 1.0;            ///< s
  double t2_nuclear = 1.0;             ///< s
  double t_obs = kYearSeconds;         ///< s

  /// Stack with coherence times taken from the isotope table.
  static SensorStack for_isotope(const IsotopeParams& isotope);

  double entanglement_gain() const { return entanglement_factor(entanglement, ensemble_size); }
  double resonator_gain() const { return resonator.gain(quality_factor); }
  void validate() const;
};

struct NuclearPhase {
  double amplitude;    ///< rad
  bool small_signal;   ///< false when amplitude > kSmallSignalLimit
};

inline constexpr double kSmallSignalLimit = 0.1;  // rad

/// gamma_N B_a |Y_N(w_a)|.
NuclearPhase nuclear_phase(double field, const PulseSequence& seq, double omega_a, const IsotopeParams& isotope);

/// delta<I_z> = I phi_N.
double iz_shift(double phase, double spin);

/// (A I / gamma_e) gamma_N |Y| G_drv kappa for a given nuclear filter magnitude |Y| (s).
double hybrid_gain_from_filter(const IsotopeParams& isotope, double filter_magnitude, double drive_gain = 1.0,
                               double dispersive_correction = 1.0);

/// G_hyb with |Y_N(w_a)| taken from the stack's nuclear sequence.
double hybrid_gain(const SensorStack& stack, double omega_a);

struct ElectronSignal {
  double deviation;        ///< delta w_{e,0}, rad/s
  double modulation_rate;  ///< w_a, rad/s
  double index;            ///< beta = delta w_{e,0} / w_a
  double effective_field;  ///< delta w_{e,0} / gamma_e, T
};

/// delta w_{e,0} = A G_drv I gamma_N |Y_N(w_a)| B_a (kappa included).
ElectronSignal electron_fm_deviation(const SensorStack& stack, double field, double omega_a);

/// F_ent G_res G_hyb B_a.
double effective_electron_field(const SensorStack& stack, double field, double omega_a);

struct Sideband {
  int order;
  double amplitude;  ///< J_n(beta)
};

/// J_0 .. J_{n_max}(beta). Negative orders follow from J_{-n} = (-1)^n J_n.
std::vector<Sideband> fm_sideband_amplitudes(double beta, int n_max);

/// Noiseless spin-lock observable <S_x>(t) = 1/2 cos(W_R t + beta sin(w_a t)).
TimeSeries spin_lock_series(double rabi, double omega_a, double deviation, double duration, double dt,
                            unsigned threads = 1);

/// Instantaneous phase of a spin-lock trace minus the Rabi carrier (Hilbert transform).
std::vector<double> demodulated_phase(const TimeSeries& series, double rabi);

}  // namespace axwind
