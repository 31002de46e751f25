/**
 * @file physics.hpp
 * @brief Isotope and halo tables, and the axion field model (frequency,
 *        coherence time, effective field amplitude on a nuclear spin).
 */
#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace axwind {

/// Parameters of one donor species. Angular quantities are in rad/s.
struct IsotopeParams {
  std::string name;
  double spin = 0.5;               ///< nuclear spin I
  double gamma_nuclear = 0.0;      ///< gamma_N, rad/s/T, signed
  double hyperfine = 0.0;          ///< A, rad/s
  double t2_nuclear = 1.0;         ///< s
  double t2_electron = 1.0;        ///< s

  void validate() const;
};

/// Standard-halo parameters. Defaults: rho = 0.4 GeV/cm^3, v0 = 220 km/s, eps = 0.05.
struct HaloModel {
  double rho_gev_cm3 = 0.4;
  double v0 = 220e3;  ///< m/s
  /// Sun velocity direction in galactic Cartesian coordinates (x to the Galactic centre).
  std::array<double, 3> sun_direction{0.0, 1.0, 0.0};
  double annual_depth = 0.05;

  void validate() const;
};

/// Named isotopes and halo presets read from an INI data file.
///
/// Sections are `[isotope:<name>]` and `[halo:<name>]`; see core/data/isotopes.ini.
class ParameterTable {
 public:
  static ParameterTable load(const std::filesystem::path& file);
  static ParameterTable parse(std::string_view text, std::string_view origin = "<memory>");
  /// Table compiled in from core/data/isotopes.ini.
  static const ParameterTable& builtin();

  const IsotopeParams& isotope(std::string_view name) const;
  const HaloModel& halo(std::string_view name) const;
  std::vector<std::string> isotope_names() const;

 private:
  std::map<std::string, IsotopeParams, std::less<>> isotopes_;
  std::map<std::string, HaloModel, std::less<>> halos_;
};

/// Compton angular frequency m_a c^2 / hbar for a mass in eV.
double axion_angular_frequency(double mass_ev);

/// tau_a = 2 pi / (omega_a (v0/c)^2).
double axion_coherence_time(double mass_ev, const HaloModel& halo);
double coherence_time_from_omega(double omega_a, const HaloModel& halo);

/// |grad a| = sqrt(2 rho) v0/c in GeV^2.
double axion_gradient_gev2(const HaloModel& halo);

/// Effective field amplitude B_{a,0} (T) on the nuclear spin for a coupling in GeV^-1.
double axion_field_amplitude(double g_ann, const HaloModel& halo, const IsotopeParams& isotope);

/// Dimensionless g_an = m_N g_aNN (m_N in GeV).
double dimensionless_coupling(double g_ann);

}  // namespace axwind
