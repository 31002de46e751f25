/**
 * @file commands.hpp
 * @brief Subcommand runners. Each builds its tables from a resolved
 * configuration; `run` writes them plus the manifest.
 */
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "axwind_cli/config.hpp"
#include "axwind_cli/table.hpp"

namespace axwind::cli {

std::vector<Table> isotope_tables(const RunConfig& cfg);
std::vector<Table> filter_tables(const RunConfig& cfg);
std::vector<Table> wind_tables(const RunConfig& cfg);
std::vector<Table> spinlock_tables(const RunConfig& cfg);
std::vector<Table> sensitivity_tables(const RunConfig& cfg, std::ostream* progress = nullptr);
/// Per-protocol curves plus the envelope, with Monte Carlo bands when montecarlo.trials > 0.
std::vector<Table> scan_tables(const RunConfig& cfg, std::ostream* progress = nullptr);

/// Dispatches on cfg.subcommand, writes every table and manifest.json; returns the files written.
std::vector<std::string> run(const RunConfig& cfg, std::ostream* progress = nullptr);

/// The scan pipeline on its own; same contract as run() for a "scan" config.
std::vector<std::string> run_scan(const RunConfig& cfg, std::ostream* progress = nullptr);

}  // namespace axwind::cli
