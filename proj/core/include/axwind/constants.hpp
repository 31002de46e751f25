/**
 * @file constants.hpp
 * @brief Physical constants (CODATA 2018, SI) and the natural-units conversion layer.
 *
 * Every module exchanges SI quantities. The only place that knows about
 * GeV, eV and cm is the `units` namespace below.
 */
#pragma once

#include <numbers>

namespace axwind {

struct PhysicalConstants {
  double hbar;                  ///< J s
  double speed_of_light;        ///< m/s
  double gamma_electron;        ///< |gamma_e|, rad/s/T
  double nucleon_mass_kg;       ///< mean of proton and neutron
  double nucleon_mass_ev;       ///< eV/c^2
  double electron_volt;         ///< J
  double ev_to_rad_per_s;       ///< (1 eV)/hbar, rad/s
  double hbar_c_gev_cm;         ///< GeV cm
};

inline constexpr PhysicalConstants kConstants{
    .hbar = 1.054571817e-34,
    .speed_of_light = 299792458.0,
    .gamma_electron = 1.76085963023e11,
    .nucleon_mass_kg = 0.5 * (1.67262192369e-27 + 1.67492749804e-27),
    .nucleon_mass_ev = 0.5 * (938.27208816e6 + 939.56542052e6),
    .electron_volt = 1.602176634e-19,
    .ev_to_rad_per_s = 1.602176634e-19 / 1.054571817e-34,
    .hbar_c_gev_cm = 1.973269804e-14,
};

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Sidereal day 86164.0905 s.
inline constexpr double kSiderealRate = kTwoPi / 86164.0905;
/// Julian year 365.25 d.
inline constexpr double kYearSeconds = 365.25 * 86400.0;
inline constexpr double kAnnualRate = kTwoPi / kYearSeconds;

namespace units {

inline constexpr double kGeV = 1e9;  // eV

/// Mass density in GeV/cm^3 to natural units GeV^4.
constexpr double gev_per_cm3_to_gev4(double rho) {
  const double l = kConstants.hbar_c_gev_cm;
  return rho * l * l * l;
}

constexpr double gev_to_joule(double e) { return e * kGeV * kConstants.electron_volt; }

/// Energy in joule to angular frequency in rad/s.
constexpr double joule_to_rad_per_s(double e) { return e / kConstants.hbar; }

constexpr double km_per_s(double v) { return v * 1e3; }

constexpr double hz_to_rad(double f) { return kTwoPi * f; }
constexpr double rad_to_hz(double w) { return w / kTwoPi; }

}  // namespace units
}  // namespace axwind
