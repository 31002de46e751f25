#include "axwind_cli/commands.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include "axwind/detection.hpp"
#include "axwind/errors.hpp"
#include "axwind/filter.hpp"
#include "axwind/montecarlo.hpp"
#include "axwind/sensitivity.hpp"
#include "axwind/transduction.hpp"
#include "axwind/wind.hpp"

namespace axwind::cli {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;


std::string join_flags(const std::vector<std::string>& flags) {
  std::string out;
  for (const auto& f : flags) out += (out.empty() ? "" : "|") + f;
  return out;
}

Table curve_table(const std::string& name, const RunConfig& cfg) {
  Table t;
  t.name = name;
  t.metadata = {{"subcommand", cfg.subcommand},
                {"isotope", cfg.text("sensor.isotope")},
                {"ensemble_size", cfg.text("sensor.ensemble_size")},
                {"entanglement", cfg.text("sensor.entanglement")},
                {"quality_factor", cfg.text("sensor.quality_factor")},
                {"t_obs_s", cfg.text("sensor.t_obs")}};
  for (auto& kv : noise_metadata(cfg)) t.metadata.push_back(std::move(kv));
  t.columns = {"m_a_eV", "omega_a_rad_s", "protocol", "tau_s", "n_pi", "g5_GeVinv", "g_an", "mc_low", "mc_high",
               "flags"};
  return t;
}

void add_point(Table& t, const SensitivityPoint& p) {
  t.add_row({p.mass_ev, p.omega_a, p.protocol, p.tau, static_cast<std::int64_t>(p.n_pi), p.g5, p.g_an, p.mc_low,
             p.mc_high, join_flags(p.flags)});
}

// Distinct, reproducible seed per (mass index, protocol).
std::uint64_t point_seed(std::uint64_t seed, std::size_t mass_index, Protocol protocol) {
  std::uint64_t x = seed ^ (0x9E3779B97F4A7C15ull * (mass_index + 1)) ^ (0xC2B2AE3D27D4EB4Full * (static_cast<int>(protocol) + 1));
  x = (x ^ (x >> 33)) * 0xFF51AFD7ED558CCDull;
  return x ^ (x >> 33);
}

void attach_monte_carlo(SensitivityPoint& p, std::size_t mass_index, Protocol protocol, const RunConfig& cfg,
                        const SensorStack& stack, const HaloModel& halo, const DetectionSettings& settings) {
  MonteCarloOptions o = monte_carlo_options(cfg);
  if (o.trials == 0) return;
  o.seed = point_seed(o.seed, mass_index, protocol);
  p = monte_carlo_limit(p.mass_ev, stack, protocol, halo, settings, o).analytic;
}

}  // namespace

std::vector<Table> isotope_tables(const RunConfig& cfg) {
  const IsotopeParams iso = parameter_table(cfg).isotope(cfg.text("sensor.isotope"));
  Table t;
  t.name = "isotope";
  t.metadata = {{"isotope", iso.name}};
  t.columns = {"quantity", "value", "unit"};
  t.add_row({std::string("spin"), iso.spin, std::string("")});
  t.add_row({std::string("gamma_nuclear"), iso.gamma_nuclear, std::string("rad/s/T")});
  t.add_row({std::string("hyperfine"), iso.hyperfine, std::string("rad/s")});
  t.add_row({std::string("hyperfine_hz"), units::rad_to_hz(iso.hyperfine), std::string("Hz")});
  t.add_row({std::string("t2_nuclear"), iso.t2_nuclear, std::string("s")});
  t.add_row({std::string("t2_electron"), iso.t2_electron, std::string("s")});
  t.add_row({std::string("hybrid_gain_per_second"), hybrid_gain_from_filter(iso, 1.0), std::string("1/s")});
  const HaloModel halo = halo_model(cfg);
  t.add_row({std::string("field_per_coupling"), axion_field_amplitude(1.0, halo, iso), std::string("T GeV")});
  return {t};
}

std::vector<Table> filter_tables(const RunConfig& cfg) {
  const auto n_pi = cfg.integer("filter.n_pi");
  const auto points = cfg.integer("filter.points");
  if (n_pi < 0) throw ConfigError("key 'filter.n_pi' must be >= 0");
  if (points < 2) throw ConfigError("key 'filter.points' must be >= 2");
  const double tau = cfg.real("filter.tau");
  const PulseSequence seq =
      PulseSequence::build(parse_sequence_kind(cfg.text("filter.kind")), tau, static_cast<std::uint64_t>(n_pi));
  const auto omega = xi_grid(tau, cfg.real("filter.grid_max_xi"), static_cast<std::size_t>(points));
  const FilterResponse r = filter_numeric(seq, omega, cfg.threads());
  const auto power = normalized_power(r, tau);

  Table t;
  t.name = "filter";
  t.metadata = {{"sequence", r.descriptor}, {"convention", r.convention}};
  try {
    const PassbandReport pb = passband_analysis(r);
    t.metadata.emplace_back("passband_center_hz", format_number(pb.center_hz));
    t.metadata.emplace_back("passband_fwhm_hz", format_number(pb.fwhm_hz));
    t.metadata.emplace_back("passband_quality", format_number(pb.quality));
  } catch (const ResolutionError& e) {
    t.metadata.emplace_back("passband", std::string("unresolved: ") + e.what());
  }
  t.columns = {"xi", "omega_rad_s", "re_Y_s", "im_Y_s", "abs_Y_s", "abs_Y_closed_form_s", "power_normalized"};
  for (std::size_t i = 0; i < omega.size(); ++i) {
    t.add_row({omega[i] * tau / kTwoPi, omega[i], r.values[i].real(), r.values[i].imag(), r.magnitude[i],
               filter_magnitude(seq, omega[i]), power[i]});
  }
  return {t};
}

std::vector<Table> wind_tables(const RunConfig& cfg) {
  const double mass = cfg.real("wind.mass_ev");
  const double duration = cfg.real("wind.days") * (kTwoPi / kSiderealRate);
  const double dt = cfg.real("wind.dt");
  const HaloModel halo = halo_model(cfg);
  const IsotopeParams iso = parameter_table(cfg).isotope(cfg.text("sensor.isotope"));
  const LabSite site{cfg.real("wind.latitude_deg") * kDeg, cfg.real("wind.axis_tilt_deg") * kDeg,
                     cfg.real("wind.axis_azimuth_deg") * kDeg};
  const WindDirection dir{cfg.real("wind.polar_deg") * kDeg, cfg.real("wind.phase_deg") * kDeg};
  WindOptions opts;
  opts.phase_renewal = cfg.boolean("wind.phase_renewal");
  opts.threads = cfg.threads();
  const double g = cfg.real("wind.g_ann");
  const std::string& mode = cfg.text("wind.mode");

  SpectrumOptions sopts;
  sopts.require_annual = duration >= 2.0 * kYearSeconds;
  Table series;
  series.name = "wind_series";
  series.metadata = {{"mass_ev", cfg.text("wind.mass_ev")}, {"mode", mode}, {"isotope", iso.name}};
  ModulationSpectrum spec;
  if (mode == "envelope") {
    const EnvelopeSeries env = wind_envelope_series(g, mass, halo, iso, site, dir, duration, dt, cfg.seed(), opts);
    series.columns = {"t_s", "re_T", "im_T", "abs_T"};
    for (std::size_t i = 0; i < env.size(); ++i)
      series.add_row({env.time(i), env.samples[i].real(), env.samples[i].imag(), std::abs(env.samples[i])});
    spec = envelope_spectrum(env, sopts);
  } else if (mode == "field") {
    const TimeSeries field = wind_field_series(g, mass, halo, iso, site, dir, duration, dt, cfg.seed(), opts);
    series.columns = {"t_s", "B_T"};
    for (std::size_t i = 0; i < field.size(); ++i) series.add_row({field.time(i), field.samples[i]});
    spec = modulation_spectrum(field, axion_angular_frequency(mass), sopts);
  } else {
    throw ConfigError("key 'wind.mode' must be envelope or field, got '" + mode + "'");
  }

  Table spectrum;
  spectrum.name = "wind_spectrum";
  spectrum.metadata = {{"bin_width_rad_s", format_number(spec.bin_width)},
                       {"sidereal_resolved", spec.sidereal_resolved ? "true" : "false"},
                       {"annual_resolved", spec.annual_resolved ? "true" : "false"}};
  for (std::size_t i = 0; i < std::min<std::size_t>(spec.lines.size(), 5); ++i)
    spectrum.metadata.emplace_back("line_" + std::to_string(i),
                                   format_number(spec.lines[i].omega) + " rad/s, " +
                                       format_number(spec.lines[i].amplitude) + " T");
  spectrum.columns = {"omega_rad_s", "f_hz", "amplitude_T"};
  for (std::size_t i = 0; i < spec.omega.size(); ++i)
    spectrum.add_row({spec.omega[i], units::rad_to_hz(spec.omega[i]), spec.amplitude[i]});
  return {series, spectrum};
}

std::vector<Table> spinlock_tables(const RunConfig& cfg) {
  const double rabi = units::hz_to_rad(1e3 * cfg.real("spinlock.rabi_khz"));
  const double omega_a = units::hz_to_rad(1e3 * cfg.real("spinlock.axion_khz"));
  const double beta = cfg.real("spinlock.beta");
  const std::string& wname = cfg.text("spinlock.window");
  dsp::Window window;
  if (wname == "rectangular") window = dsp::Window::Rectangular;
  else if (wname == "hann") window = dsp::Window::Hann;
  else throw ConfigError("key 'spinlock.window' must be rectangular or hann, got '" + wname + "'");

  const TimeSeries s =
      spin_lock_series(rabi, omega_a, beta * omega_a, cfg.real("spinlock.duration"), cfg.real("spinlock.dt"),
                       cfg.threads());
  Table series;
  series.name = "spinlock_series";
  series.metadata = {{"rabi_khz", cfg.text("spinlock.rabi_khz")},
                     {"axion_khz", cfg.text("spinlock.axion_khz")},
                     {"beta", cfg.text("spinlock.beta")}};
  series.columns = {"t_s", "sx"};
  for (std::size_t i = 0; i < s.size(); ++i) series.add_row({s.time(i), s.samples[i]});

  const PowerSpectrum p = psd(s, window);
  Table spectrum;
  spectrum.name = "spinlock_psd";
  spectrum.metadata = series.metadata;
  spectrum.metadata.emplace_back("window", wname);
  spectrum.metadata.emplace_back("df_hz", format_number(p.df));
  spectrum.columns = {"f_hz", "psd_per_hz"};
  for (std::size_t i = 0; i < p.density.size(); ++i) spectrum.add_row({p.frequency_hz[i], p.density[i]});
  return {series, spectrum};
}

std::vector<Table> sensitivity_tables(const RunConfig& cfg, std::ostream* progress) {
  const SensorStack stack = sensor_stack(cfg);
  const HaloModel halo = halo_model(cfg);
  const DetectionSettings settings = detection_settings(cfg);
  const auto protocols = parse_protocol_list(cfg.text("detection.protocols"));
  const double mass = cfg.real("scan.mass_ev");

  Table t = curve_table("sensitivity", cfg);
  const SensitivityPoint* best = nullptr;
  std::vector<SensitivityPoint> points;
  points.reserve(protocols.size());
  for (Protocol p : protocols) {
    if (progress) *progress << "sensitivity: " << to_string(p) << " at " << mass << " eV\n";
    points.push_back(five_sigma_threshold(mass, stack, p, halo, settings));
    attach_monte_carlo(points.back(), 0, p, cfg, stack, halo, settings);
  }
  for (const auto& p : points) {
    add_point(t, p);
    const bool better = !best || (best->out_of_band() && !p.out_of_band()) ||
                        (best->out_of_band() == p.out_of_band() && p.g5 < best->g5);
    if (better) best = &p;
  }
  SensitivityPoint env = *best;
  env.flags.insert(env.flags.begin(), "envelope");
  add_point(t, env);
  return {t};
}

std::vector<Table> scan_tables(const RunConfig& cfg, std::ostream* progress) {
  const SensorStack stack = sensor_stack(cfg);
  const HaloModel halo = halo_model(cfg);
  const DetectionSettings settings = detection_settings(cfg);
  const auto protocols = parse_protocol_list(cfg.text("detection.protocols"));
  const auto masses =
      log_mass_grid(cfg.real("scan.mass_min_ev"), cfg.real("scan.mass_max_ev"), cfg.real("scan.points_per_decade"));
  if (progress) *progress << "scan: " << masses.size() << " masses x " << protocols.size() << " protocols\n";

  ScanResult result = sensitivity_scan(masses, protocols, stack, halo, settings, cfg.threads());
  if (monte_carlo_options(cfg).trials > 0) {
    for (std::size_t j = 0; j < protocols.size(); ++j) {
      for (std::size_t i = 0; i < masses.size(); ++i) {
        if (progress) *progress << "scan: monte carlo " << to_string(protocols[j]) << " m = " << masses[i] << " eV\n";
        attach_monte_carlo(result.curves[j].points[i], i, protocols[j], cfg, stack, halo, settings);
      }
    }
    // The envelope holds copies; refresh them with the bands just computed.
    for (std::size_t i = 0; i < masses.size(); ++i)
      for (const auto& curve : result.curves)
        if (curve.name == result.envelope.points[i].protocol) result.envelope.points[i] = curve.points[i];
  }

  std::vector<Table> out;
  for (const auto& curve : result.curves) {
    Table t = curve_table("curve_" + curve.name, cfg);
    for (const auto& p : curve.points) add_point(t, p);
    out.push_back(std::move(t));
  }
  Table env = curve_table("curve_envelope", cfg);
  for (const auto& p : result.envelope.points) add_point(env, p);
  out.push_back(std::move(env));
  return out;
}

std::vector<std::string> run(const RunConfig& cfg, std::ostream* progress) {
  std::vector<Table> tables;
  const std::string& cmd = cfg.subcommand;
  if (cmd == "isotope") tables = isotope_tables(cfg);
  else if (cmd == "filter") tables = filter_tables(cfg);
  else if (cmd == "wind") tables = wind_tables(cfg);
  else if (cmd == "spinlock") tables = spinlock_tables(cfg);
  else if (cmd == "sensitivity") tables = sensitivity_tables(cfg, progress);
  else if (cmd == "scan") tables = scan_tables(cfg, progress);
  else throw ConfigError("unknown subcommand '" + cmd + "'");

  std::vector<std::string> files;
  for (const auto& t : tables) files.push_back(write_table(cfg, t));
  write_manifest(cfg, files);
  files.push_back("manifest.json");
  if (progress) *progress << cmd << ": wrote " << files.size() << " files to " << cfg.out_dir().string() << '\n';
  return files;
}

std::vector<std::string> run_scan(const RunConfig& cfg, std::ostream* progress) {
  if (cfg.subcommand != "scan") throw ConfigError("run_scan needs a scan configuration");
  return run(cfg, progress);
}

}  // namespace axwind::cli
