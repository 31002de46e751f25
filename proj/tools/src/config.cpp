#include "axwind_cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "axwind/errors.hpp"

namespace axwind::cli {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

const SchemaEntry* find_entry(std::string_view key) {
  const auto& s = schema();
  const auto it = std::find_if(s.begin(), s.end(), [&](const SchemaEntry& e) { return e.key == key; });
  return it == s.end() ? nullptr : &*it;
}

std::optional<double> to_real(std::string_view v) {
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc{} || ptr != v.data() + v.size()) return std::nullopt;
  return x;
}

std::optional<std::int64_t> to_integer(std::string_view v) {
  std::int64_t x = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec == std::errc{} && ptr == v.data() + v.size()) return x;
  // Accept integral values written in exponent form, e.g. 1e6.
  const auto r = to_real(v);
  if (r && *r == std::floor(*r) && std::abs(*r) < 9.0e18) return static_cast<std::int64_t>(*r);
  return std::nullopt;
}

std::optional<bool> to_boolean(std::string_view v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  return std::nullopt;
}

void check_value(const SchemaEntry& e, const std::string& value, std::string_view origin) {
  bool ok = true;
  switch (e.type) {
    case ValueType::Real: ok = to_real(value).has_value(); break;
    case ValueType::Integer: ok = to_integer(value).has_value(); break;
    case ValueType::Boolean: ok = to_boolean(value).has_value(); break;
    case ValueType::Text: break;
  }
  if (!ok) {
    static constexpr const char* names[] = {"a real number", "an integer", "a boolean", "text"};
    throw ConfigError(std::string(origin) + ": key '" + e.key + "' expects " + names[static_cast<int>(e.type)] +
                      ", got '" + value + "'");
  }
}

void assign(std::map<std::string, std::string>& values, const std::string& key, const std::string& value,
            std::string_view origin) {
  const SchemaEntry* e = find_entry(key);
  if (!e) throw ConfigError(std::string(origin) + ": unknown configuration key '" + key + "'");
  check_value(*e, value, origin);
  values[key] = value;
}

void apply_ini(std::map<std::string, std::string>& values, std::istream& in, const std::string& origin) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& err) {
    throw ConfigError(origin + ":" + std::to_string(err.line()) + ": " + err.message());
  }
  for (const auto& [section, body] : tree) {
    if (body.empty()) throw ConfigError(origin + ": key '" + section + "' must sit inside a [section]");
    for (const auto& [key, leaf] : body) assign(values, section + "." + key, trim(leaf.data()), origin);
  }
}

RunConfig finish(std::string subcommand, std::map<std::string, std::string> values,
                 const std::vector<std::pair<std::string, std::string>>& overrides) {
  RunConfig cfg;
  cfg.subcommand = std::move(subcommand);
  for (const auto& [k, v] : overrides) assign(values, k, v, "override");
  cfg.overrides = overrides;
  cfg.values = std::move(values);
  return cfg;
}

std::map<std::string, std::string> defaults() {
  std::map<std::string, std::string> out;
  for (const auto& e : schema()) out[e.key] = e.default_value;
  return out;
}

}  // namespace

const std::vector<SchemaEntry>& schema() {
  using T = ValueType;
  static const std::vector<SchemaEntry> entries = {
      {"run.seed", T::Integer, "1", "master seed"},
      {"run.threads", T::Integer, "1", "worker threads (0 = all cores)"},
      {"run.out_dir", T::Text, "out", "output directory"},
      {"run.format", T::Text, "csv", "csv or json"},
      {"run.parameter_file", T::Text, "", "isotope/halo INI; empty uses the built-in table"},

      {"halo.rho_gev_cm3", T::Real, "0.4", "local dark-matter density, GeV/cm^3"},
      {"halo.v0_km_s", T::Real, "220", "SHM velocity scale, km/s"},
      {"halo.annual_depth", T::Real, "0.05", "annual modulation depth eps"},

      {"sensor.isotope", T::Text, "Bi209", "donor species"},
      {"sensor.ensemble_size", T::Real, "1e6", "N"},
      {"sensor.entanglement", T::Text, "sql", "sql or ideal"},
      {"sensor.quality_factor", T::Real, "1e5", "resonator Q"},
      {"sensor.resonator_q_ref", T::Real, "1", "G_res = (Q / Q_ref)^p"},
      {"sensor.resonator_exponent", T::Real, "0.5", "p in G_res"},
      {"sensor.drive_gain", T::Real, "1", "G_drv"},
      {"sensor.dispersive_correction", T::Real, "1", "kappa"},
      {"sensor.t2_electron", T::Real, "0", "T2e in s; 0 takes the isotope value"},
      {"sensor.t2_nuclear", T::Real, "0", "T2N in s; 0 takes the isotope value"},
      {"sensor.t_obs", T::Real, "31557600", "observation time, s"},

      {"noise.eta_electron", T::Real, "1e-15", "electron floor, T/sqrt(Hz)"},
      {"noise.eta_nuclear", T::Real, "1e-12", "nuclear floor, T/sqrt(Hz)"},
      {"noise.corner_hz", T::Real, "0", "1/f corner; 0 disables"},
      {"noise.exponent", T::Real, "1", "1/f exponent"},
      {"noise.readout_variance", T::Real, "0", "added readout variance per shot"},

      {"detection.sigma", T::Real, "5", "threshold in standard deviations"},
      {"detection.stacking_exponent", T::Real, "0.25", "SNR ~ K^p for K incoherent segments"},
      {"detection.max_pi_pulses", T::Real, "1e6", "pulse budget for XY8"},
      {"detection.protocols", T::Text, "ramsey,hahn,xy8,spinlock", "protocol bank"},

      {"filter.kind", T::Text, "cpmg", "ramsey, hahn, cpmg or xy8"},
      {"filter.tau", T::Real, "1", "sequence duration, s"},
      {"filter.n_pi", T::Integer, "8", "number of pi pulses"},
      {"filter.grid_max_xi", T::Real, "16", "grid upper limit in xi = omega tau / 2 pi"},
      {"filter.points", T::Integer, "2048", "grid points"},

      {"wind.mass_ev", T::Real, "1e-12", "axion mass, eV"},
      {"wind.days", T::Real, "4", "series length in sidereal days"},
      {"wind.dt", T::Real, "600", "sampling step, s"},
      {"wind.g_ann", T::Real, "1e-10", "coupling, GeV^-1"},
      {"wind.mode", T::Text, "envelope", "envelope (baseband) or field (carrier resolved)"},
      {"wind.latitude_deg", T::Real, "0", "lab latitude"},
      {"wind.axis_tilt_deg", T::Real, "0", "quantization axis tilt from vertical"},
      {"wind.axis_azimuth_deg", T::Real, "0", "tilt azimuth from north"},
      {"wind.polar_deg", T::Real, "90", "wind angle from Earth's axis"},
      {"wind.phase_deg", T::Real, "0", "wind azimuth phase"},
      {"wind.phase_renewal", T::Boolean, "true", "redraw the carrier phase every ~tau_a"},

      {"spinlock.rabi_khz", T::Real, "50", "Rabi frequency / 2 pi, kHz"},
      {"spinlock.axion_khz", T::Real, "5", "w_a / 2 pi, kHz"},
      {"spinlock.beta", T::Real, "0.01", "modulation index"},
      {"spinlock.duration", T::Real, "0.01", "s"},
      {"spinlock.dt", T::Real, "1e-6", "s"},
      {"spinlock.window", T::Text, "rectangular", "PSD window: rectangular or hann"},

      {"scan.mass_ev", T::Real, "1e-12", "mass for the sensitivity subcommand, eV"},
      {"scan.mass_min_ev", T::Real, "1e-16", "eV"},
      {"scan.mass_max_ev", T::Real, "1e-6", "eV"},
      {"scan.points_per_decade", T::Real, "20", "grid density"},

      {"montecarlo.trials", T::Integer, "0", "0 disables; otherwise >= 100"},
      {"montecarlo.bootstrap", T::Integer, "200", "bootstrap resamples"},
      {"montecarlo.max_segments", T::Integer, "256", "simulated coherence segments"},
      {"montecarlo.samples_per_segment", T::Integer, "16", "envelope samples per segment"},
      {"montecarlo.tolerance", T::Real, "0.05", "bisection stop, relative in g"},
      {"montecarlo.noise_scale", T::Real, "1", "injected noise relative to the floor"},
  };
  return entries;
}

double RunConfig::real(std::string_view key) const { return *to_real(text(key)); }
std::int64_t RunConfig::integer(std::string_view key) const { return *to_integer(text(key)); }
bool RunConfig::boolean(std::string_view key) const { return *to_boolean(text(key)); }

const std::string& RunConfig::text(std::string_view key) const {
  const auto it = values.find(std::string(key));
  if (it == values.end()) throw ConfigError("configuration key '" + std::string(key) + "' is not in the schema");
  return it->second;
}

std::uint64_t RunConfig::seed() const {
  const auto s = integer("run.seed");
  if (s < 0) throw ConfigError("key 'run.seed' must be >= 0");
  return static_cast<std::uint64_t>(s);
}

unsigned RunConfig::threads() const {
  const auto t = integer("run.threads");
  if (t < 0 || t > 4096) throw ConfigError("key 'run.threads' must lie in [0, 4096]");
  return static_cast<unsigned>(t);
}

std::filesystem::path RunConfig::out_dir() const { return text("run.out_dir"); }

OutputFormat RunConfig::format() const {
  const std::string& f = text("run.format");
  if (f == "csv") return OutputFormat::Csv;
  if (f == "json") return OutputFormat::Json;
  throw ConfigError("key 'run.format' must be csv or json, got '" + f + "'");
}

std::pair<std::string, std::string> parse_assignment(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos) throw ConfigError("override '" + std::string(text) + "' is not section.key=value");
  std::string key = trim(text.substr(0, eq));
  if (key.find('.') == std::string::npos)
    throw ConfigError("override key '" + key + "' must be written as section.key");
  return {std::move(key), trim(text.substr(eq + 1))};
}

RunConfig resolve_config(std::string subcommand, const std::optional<std::filesystem::path>& file,
                         const std::vector<std::pair<std::string, std::string>>& overrides) {
  auto values = defaults();
  if (file) {
    std::ifstream in(*file);
    if (!in) throw ConfigError("cannot open config file '" + file->string() + "'");
    apply_ini(values, in, file->string());
  }
  RunConfig cfg = finish(std::move(subcommand), std::move(values), overrides);
  cfg.config_file = file;
  return cfg;
}

RunConfig resolve_config_text(std::string subcommand, std::string_view ini_text,
                              const std::vector<std::pair<std::string, std::string>>& overrides) {
  auto values = defaults();
  std::istringstream in{std::string(ini_text)};
  apply_ini(values, in, "<text>");
  return finish(std::move(subcommand), std::move(values), overrides);
}

const ParameterTable& parameter_table(const RunConfig& cfg) {
  const std::string& path = cfg.text("run.parameter_file");
  if (path.empty()) return ParameterTable::builtin();
  // Loaded once per process and path; runs are single-config so this stays simple.
  static std::map<std::string, ParameterTable> cache;
  auto it = cache.find(path);
  if (it == cache.end()) it = cache.emplace(path, ParameterTable::load(path)).first;
  return it->second;
}

HaloModel halo_model(const RunConfig& cfg) {
  HaloModel halo;
  halo.rho_gev_cm3 = cfg.real("halo.rho_gev_cm3");
  halo.v0 = units::km_per_s(cfg.real("halo.v0_km_s"));
  halo.annual_depth = cfg.real("halo.annual_depth");
  halo.validate();
  return halo;
}

SensorStack sensor_stack(const RunConfig& cfg) {
  SensorStack s = SensorStack::for_isotope(parameter_table(cfg).isotope(cfg.text("sensor.isotope")));
  s.ensemble_size = cfg.real("sensor.ensemble_size");
  s.entanglement = parse_entanglement_model(cfg.text("sensor.entanglement"));
  s.quality_factor = cfg.real("sensor.quality_factor");
  s.resonator = {cfg.real("sensor.resonator_q_ref"), cfg.real("sensor.resonator_exponent")};
  s.drive_gain = cfg.real("sensor.drive_gain");
  s.dispersive_correction = cfg.real("sensor.dispersive_correction");
  if (const double t2e = cfg.real("sensor.t2_electron"); t2e != 0.0) s.t2_electron = t2e;
  if (const double t2n = cfg.real("sensor.t2_nuclear"); t2n != 0.0) s.t2_nuclear = t2n;
  s.t_obs = cfg.real("sensor.t_obs");
  s.noise_electron = cfg.real("noise.eta_electron");
  s.noise_nuclear = cfg.real("noise.eta_nuclear");
  s.validate();
  return s;
}

DetectionSettings detection_settings(const RunConfig& cfg) {
  DetectionSettings d;
  d.sigma = cfg.real("detection.sigma");
  d.stacking.exponent = cfg.real("detection.stacking_exponent");
  d.limits.max_pi_pulses = cfg.real("detection.max_pi_pulses");
  d.limits.rabi = units::hz_to_rad(1e3 * cfg.real("spinlock.rabi_khz"));
  d.noise_shape = {cfg.real("noise.corner_hz"), cfg.real("noise.exponent"), cfg.real("noise.readout_variance")};
  d.noise_shape.validate();
  if (!(d.sigma > 0.0)) throw ConfigError("key 'detection.sigma' must be > 0");
  if (!(d.stacking.exponent >= 0.0 && d.stacking.exponent <= 0.5))
    throw ConfigError("key 'detection.stacking_exponent' must lie in [0, 0.5]");
  return d;
}

MonteCarloOptions monte_carlo_options(const RunConfig& cfg) {
  const auto count = [&](std::string_view key) {
    const auto v = cfg.integer(key);
    if (v < 0) throw ConfigError("key '" + std::string(key) + "' must be >= 0");
    return static_cast<std::size_t>(v);
  };
  MonteCarloOptions o;
  o.trials = count("montecarlo.trials");
  o.bootstrap = count("montecarlo.bootstrap");
  o.max_segments = count("montecarlo.max_segments");
  o.samples_per_segment = count("montecarlo.samples_per_segment");
  o.tolerance = cfg.real("montecarlo.tolerance");
  o.noise_scale = cfg.real("montecarlo.noise_scale");
  o.seed = cfg.seed();
  o.threads = cfg.threads();
  return o;
}

}  // namespace axwind::cli
