/**
 * @file sensitivity.hpp
 * @brief 5-sigma coupling thresholds, protocol selection and mass scans.
 */
#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "axwind/detection.hpp"
#include "axwind/filter.hpp"
#include "axwind/physics.hpp"
#include "axwind/transduction.hpp"

namespace axwind {

enum class Protocol { Ramsey, Hahn, Xy8, SpinLock };

std::string_view to_string(Protocol protocol);
Protocol parse_protocol(std::string_view name);
std::vector<Protocol> parse_protocol_list(std::string_view comma_separated);

/// Hardware limits applied when fitting a protocol to a frequency.
struct ProtocolLimits {
  double max_pi_pulses = 1e6;
  double rabi = kTwoPi * 50e3;  ///< spin-lock Rabi frequency, rad/s
};

struct ProtocolChoice {
  Protocol protocol;
  double tau = 0.0;                 ///< s
  std::uint64_t n_pi = 0;
  double filter_magnitude = 0.0;    ///< |Y_N(w_a)|, s
  double passband_peak = 0.0;       ///< max |Y_N| of the chosen sequence, s
  bool in_band = false;             ///< |Y_N(w_a)| >= peak / 2 and hardware limits met
  std::optional<PulseSequence> sequence;  ///< empty for spin lock
};

/// Picks (tau, N_pi) that centre the protocol's passband on w_a with tau <= T2N.
///
/// Ramsey uses tau = min(T2N, pi/w_a); Hahn tau = min(T2N, 2 pi/w_a); XY8
/// takes the largest 8k with tau = pi 8k / w_a <= T2N. Spin lock has no
/// pulses: the nuclear phase follows the drive continuously,
/// |Y| = 1/sqrt(w_a^2 + T2N^-2), and the sideband must sit below W_R.
ProtocolChoice match_protocol(Protocol protocol, double omega_a, double t2_nuclear, const ProtocolLimits& limits = {});

/// Largest |Y| of an echo-family sequence around its main passband.
double echo_family_peak(const PulseSequence& seq);

struct DetectionSettings {
  StackingRule stacking;
  ProtocolLimits limits;
  NoiseShape noise_shape;
  double sigma = 5.0;
};

/// The linear chain from coupling to statistic, exposed for scaling checks.
struct ChainInputs {
  double entanglement_gain;
  double resonator_gain;
  double hybrid_gain;
  double field_per_coupling;  ///< dB_{a,0}/dg_aNN, T GeV
  double noise_floor;         ///< eta_B^(e), T/sqrt(Hz)
  Integration integration;
  StackingRule stacking;
  double sigma = 5.0;
};

/// g = sigma eta / (F_ent G_res G_hyb dB/dg sqrt(T_coh) K^p); exact because SNR is linear in g.
double coupling_threshold(const ChainInputs& chain);

struct SensitivityPoint {
  double mass_ev = 0.0;
  double omega_a = 0.0;
  std::string protocol;
  double tau = 0.0;
  std::uint64_t n_pi = 0;
  double g5 = 0.0;    ///< GeV^-1
  double g_an = 0.0;  ///< m_N g5
  double mc_low = std::numeric_limits<double>::quiet_NaN();
  double mc_high = std::numeric_limits<double>::quiet_NaN();
  std::vector<std::string> flags;

  double hybrid_gain = 0.0;
  double filter_magnitude = 0.0;
  double t_coh = 0.0;
  double stacking = 1.0;
  double hybrid_over_nuclear = 0.0;  ///< SNR_e / SNR_N at this point

  bool has_flag(std::string_view flag) const;
  bool out_of_band() const { return has_flag("out_of_band"); }
};

SensitivityPoint five_sigma_threshold(double mass_ev, const SensorStack& stack, Protocol protocol,
                                      const HaloModel& halo, const DetectionSettings& settings = {});

struct SensitivityCurve {
  std::string name;
  std::vector<SensitivityPoint> points;  ///< ascending mass
};

struct ScanResult {
  std::vector<SensitivityCurve> curves;  ///< one per protocol, in request order
  SensitivityCurve envelope;             ///< best in-band protocol per mass
};

ScanResult sensitivity_scan(std::span<const double> masses, std::span<const Protocol> protocols,
                            const SensorStack& stack, const HaloModel& halo, const DetectionSettings& settings = {},
                            unsigned threads = 1);

/// Log-spaced masses from lo to hi inclusive.
std::vector<double> log_mass_grid(double lo, double hi, double points_per_decade);

}  // namespace axwind
