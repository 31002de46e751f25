/**
 * @file table.hpp
 * @brief Plot-ready tables and their CSV / JSON / manifest emitters.
 *
 * Numbers are written with std::to_chars (shortest round-trip form, no
 * locale), so identical inputs give byte-identical files.
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "axwind_cli/config.hpp"

namespace axwind::cli {

using Cell = std::variant<double, std::int64_t, std::string>;

struct Table {
  std::string name;  ///< file stem
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

std::string format_number(double x);
std::string format_cell(const Cell& c);

/// '#'-prefixed metadata lines, one header row, then data.
void write_csv(std::ostream& out, const Table& table);

/// Writes `table` in the configured format under the output directory; returns the file name.
std::string write_table(const RunConfig& cfg, const Table& table);

/// manifest.json: version, subcommand, resolved configuration, overrides, emitted files.
void write_manifest(const RunConfig& cfg, const std::vector<std::string>& outputs);

/// Metadata lines describing the noise configuration (embedded in every curve).
std::vector<std::pair<std::string, std::string>> noise_metadata(const RunConfig& cfg);

}  // namespace axwind::cli
