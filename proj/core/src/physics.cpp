#include "axwind/physics.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

#include "axwind/constants.hpp"
#include "axwind/errors.hpp"

namespace axwind {
namespace {

#include "isotopes_data.inc"

bool finite_positive(double x) { return std::isfinite(x) && x > 0.0; }

double read_double(const boost::property_tree::ptree& section, const std::string& key,
                   std::string_view where) {
  const auto node = section.get_optional<std::string>(key);
  if (!node) {
    throw ConfigError(std::string(where) + ": missing key '" + key + "'");
  }
  std::istringstream in(*node);
  in.imbue(std::locale::classic());
  double value = 0.0;
  if (!(in >> value) || !(in >> std::ws).eof()) {
    throw ConfigError(std::string(where) + "." + key + ": expected a number, got '" + *node + "'");
  }
  return value;
}

}  // namespace

void IsotopeParams::validate() const {
  const double twice = 2.0 * spin;
  if (!(spin >= 0.5) || std::abs(twice - std::round(twice)) > 1e-12) {
    throw DomainError("isotope " + name + ": spin must be a positive half-integer");
  }
  if (!std::isfinite(gamma_nuclear) || gamma_nuclear == 0.0) {
    throw DomainError("isotope " + name + ": gamma_N must be finite and non-zero");
  }
  if (!finite_positive(hyperfine)) throw DomainError("isotope " + name + ": A must be > 0");
  if (!finite_positive(t2_nuclear) || !finite_positive(t2_electron)) {
    throw DomainError("isotope " + name + ": coherence times must be > 0");
  }
}

void HaloModel::validate() const {
  if (!finite_positive(rho_gev_cm3)) throw DomainError("halo: rho_DM must be > 0");
  if (!finite_positive(v0) || v0 >= kConstants.speed_of_light) {
    throw DomainError("halo: v0 must satisfy 0 < v0 < c");
  }
  if (!(annual_depth >= 0.0 && annual_depth < 1.0)) {
    throw DomainError("halo: annual depth must be in [0, 1)");
  }
  const auto& d = sun_direction;
  const double norm = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
  if (!(std::abs(norm - 1.0) < 1e-9)) throw DomainError("halo: sun direction must be a unit vector");
}

ParameterTable ParameterTable::parse(std::string_view text, std::string_view origin) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream in{std::string(text)};
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string(origin) + ":" + std::to_string(e.line()) + ": " + e.message());
  }

  ParameterTable table;
  for (const auto& [section_name, section] : tree) {
    const auto colon = section_name.find(':');
    if (colon == std::string::npos) {
      throw ConfigError(std::string(origin) + ": section '" + section_name +
                        "' must be 'isotope:<name>' or 'halo:<name>'");
    }
    const std::string kind = section_name.substr(0, colon);
    const std::string name = section_name.substr(colon + 1);
    const std::string where = std::string(origin) + "[" + section_name + "]";
    if (kind == "isotope") {
      IsotopeParams iso;
      iso.name = name;
      iso.spin = read_double(section, "spin", where);
      iso.gamma_nuclear = kTwoPi * read_double(section, "gamma_over_2pi_hz_t", where);
      iso.hyperfine = kTwoPi * read_double(section, "hyperfine_hz", where);
      iso.t2_nuclear = read_double(section, "t2_nuclear_s", where);
      iso.t2_electron = read_double(section, "t2_electron_s", where);
      iso.validate();
      table.isotopes_[name] = iso;
    } else if (kind == "halo") {
      HaloModel halo;
      halo.rho_gev_cm3 = read_double(section, "rho_gev_cm3", where);
      halo.v0 = units::km_per_s(read_double(section, "v0_km_s", where));
      halo.annual_depth = read_double(section, "annual_depth", where);
      std::istringstream dir(section.get<std::string>("sun_direction", "0 1 0"));
      dir.imbue(std::locale::classic());
      if (!(dir >> halo.sun_direction[0] >> halo.sun_direction[1] >> halo.sun_direction[2])) {
        throw ConfigError(where + ".sun_direction: expected three numbers");
      }
      halo.validate();
      table.halos_[name] = halo;
    } else {
      throw ConfigError(where + ": unknown section kind '" + kind + "'");
    }
  }
  return table;
}

ParameterTable ParameterTable::load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open parameter file " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), file.string());
}

const ParameterTable& ParameterTable::builtin() {
  static const ParameterTable table = parse(kBuiltinParameterFile, "isotopes.ini");
  return table;
}

const IsotopeParams& ParameterTable::isotope(std::string_view name) const {
  const auto it = isotopes_.find(name);
  if (it == isotopes_.end()) throw ConfigError("unknown isotope '" + std::string(name) + "'");
  return it->second;
}

const HaloModel& ParameterTable::halo(std::string_view name) const {
  const auto it = halos_.find(name);
  if (it == halos_.end()) throw ConfigError("unknown halo model '" + std::string(name) + "'");
  return it->second;
}

std::vector<std::string> ParameterTable::isotope_names() const {
  std::vector<std::string> names;
  for (const auto& [name, iso] : isotopes_) names.push_back(name);
  return names;
}

double axion_angular_frequency(double mass_ev) {
  if (!finite_positive(mass_ev)) throw DomainError("axion mass must be finite and > 0");
  return mass_ev * kConstants.ev_to_rad_per_s;
}

double coherence_time_from_omega(double omega_a, const HaloModel& halo) {
  if (!finite_positive(omega_a)) throw DomainError("axion frequency must be finite and > 0");
  halo.validate();
  const double beta = halo.v0 / kConstants.speed_of_light;
  return kTwoPi / (omega_a * beta * beta);
}

double axion_coherence_time(double mass_ev, const HaloModel& halo) {
  return coherence_time_from_omega(axion_angular_frequency(mass_ev), halo);
}

double axion_gradient_gev2(const HaloModel& halo) {
  halo.validate();
  const double rho = units::gev_per_cm3_to_gev4(halo.rho_gev_cm3);
  return std::sqrt(2.0 * rho) * (halo.v0 / kConstants.speed_of_light);
}

double dimensionless_coupling(double g_ann) {
  return kConstants.nucleon_mass_ev / units::kGeV * g_ann;
}

double axion_field_amplitude(double g_ann, const HaloModel& halo, const IsotopeParams& isotope) {
  if (!(std::isfinite(g_ann) && g_ann >= 0.0)) throw DomainError("g_aNN must be finite and >= 0");
  if (isotope.gamma_nuclear == 0.0) throw DomainError("isotope " + isotope.name + ": gamma_N = 0");
  // g_an |grad a| / (2 m_N): the nucleon mass of g_an = m_N g_aNN cancels the
  // explicit 1/m_N, leaving an energy in GeV.
  const double m_n_gev = kConstants.nucleon_mass_ev / units::kGeV;
  const double energy_gev = dimensionless_coupling(g_ann) * axion_gradient_gev2(halo) / (2.0 * m_n_gev);
  const double omega = units::joule_to_rad_per_s(units::gev_to_joule(energy_gev));
  return omega / std::abs(isotope.gamma_nuclear);
}

}  // namespace axwind
