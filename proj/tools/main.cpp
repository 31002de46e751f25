// axwind: batch front-end for the axion-wind sensitivity toolkit.

#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "axwind/errors.hpp"
#include "axwind/version.hpp"
#include "axwind_cli/commands.hpp"
#include "axwind_cli/config.hpp"

namespace {

// Flag value bound to a schema key; only flags the user actually passed become overrides.
struct Binding {
  std::string key;
  std::string value;
  CLI::Option* option = nullptr;
};

class Bindings {
 public:
  void add(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
    auto& b = items_.emplace_back(std::make_unique<Binding>());
    b->key = key;
    b->option = app->add_option(flag, b->value, help + " [" + key + "]");
  }

  void collect(std::vector<std::pair<std::string, std::string>>& out) const {
    for (const auto& b : items_)
      if (b->option->count() > 0) out.emplace_back(b->key, b->value);
  }

 private:
  std::vector<std::unique_ptr<Binding>> items_;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Axion-wind hybrid-spin sensitivity toolkit"};
  app.set_version_flag("--version", std::string(axwind::kVersion));
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<std::string> config_file;
  std::vector<std::string> sets;
  Bindings global;
  app.add_option("--config", config_file, "INI configuration file");
  app.add_option("--set", sets, "override, section.key=value (repeatable)");
  global.add(&app, "--seed", "run.seed", "master seed");
  global.add(&app, "--out-dir", "run.out_dir", "output directory");
  global.add(&app, "--threads", "run.threads", "worker threads");
  global.add(&app, "--format", "run.format", "csv or json");

  Bindings local;
  auto* isotope = app.add_subcommand("isotope", "Isotope parameters and derived gains");
  local.add(isotope, "--name", "sensor.isotope", "isotope name");

  auto* filter = app.add_subcommand("filter", "Nuclear filter function |Y_N| on a xi grid");
  local.add(filter, "--kind", "filter.kind", "ramsey, hahn, cpmg or xy8");
  local.add(filter, "--tau", "filter.tau", "sequence duration, s");
  local.add(filter, "--n-pi", "filter.n_pi", "pi pulses");
  local.add(filter, "--grid-max-xi", "filter.grid_max_xi", "upper xi");
  local.add(filter, "--points", "filter.points", "grid points");

  auto* wind = app.add_subcommand("wind", "Axion-wind series and its modulation spectrum");
  local.add(wind, "--mass-ev", "wind.mass_ev", "axion mass, eV");
  local.add(wind, "--days", "wind.days", "sidereal days");
  local.add(wind, "--dt", "wind.dt", "sampling step, s");

  auto* spinlock = app.add_subcommand("spinlock", "Spin-lock FM trace and its PSD");
  local.add(spinlock, "--rabi-khz", "spinlock.rabi_khz", "Rabi frequency, kHz");
  local.add(spinlock, "--axion-khz", "spinlock.axion_khz", "axion frequency, kHz");
  local.add(spinlock, "--beta", "spinlock.beta", "modulation index");
  local.add(spinlock, "--duration", "spinlock.duration", "s");
  local.add(spinlock, "--dt", "spinlock.dt", "s");

  auto* sensitivity = app.add_subcommand("sensitivity", "5-sigma threshold at one mass");
  local.add(sensitivity, "--mass-ev", "scan.mass_ev", "axion mass, eV");
  local.add(sensitivity, "--mc-trials", "montecarlo.trials", "Monte Carlo trials (0 = off)");

  auto* scan = app.add_subcommand("scan", "5-sigma curves over a mass grid");
  local.add(scan, "--mass-min-ev", "scan.mass_min_ev", "eV");
  local.add(scan, "--mass-max-ev", "scan.mass_max_ev", "eV");
  local.add(scan, "--points-per-decade", "scan.points_per_decade", "grid density");
  local.add(scan, "--mc-trials", "montecarlo.trials", "Monte Carlo trials (0 = off)");

  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    std::vector<std::pair<std::string, std::string>> overrides;
    for (const auto& s : sets) overrides.push_back(axwind::cli::parse_assignment(s));
    global.collect(overrides);
    local.collect(overrides);
    std::optional<std::filesystem::path> file;
    if (config_file) file = *config_file;
    const auto cfg = axwind::cli::resolve_config(command, file, overrides);
    axwind::cli::run(cfg, &std::cerr);
  } catch (const axwind::Error& e) {
    std::cerr << "axwind " << command << ": " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "axwind " << command << ": unexpected failure: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
