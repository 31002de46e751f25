/**
 * @file config.hpp
 * @brief Run configuration: schema, INI loading and override precedence.
 *
 * Keys are addressed as "section.key". Resolution order is built-in
 * defaults, then the config file, then command-line overrides; a key
 * outside the schema is an error naming that key.
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "axwind/montecarlo.hpp"
#include "axwind/physics.hpp"
#include "axwind/sensitivity.hpp"
#include "axwind/transduction.hpp"

namespace axwind::cli {

enum class ValueType { Real, Integer, Boolean, Text };

struct SchemaEntry {
  std::string key;  ///< "section.key"
  ValueType type;
  std::string default_value;
  std::string help;
};

const std::vector<SchemaEntry>& schema();

enum class OutputFormat { Csv, Json };

struct RunConfig {
  std::string subcommand;
  std::optional<std::filesystem::path> config_file;
  std::vector<std::pair<std::string, std::string>> overrides;  ///< in the order they were applied
  std::map<std::string, std::string> values;                   ///< fully resolved, every schema key present

  double real(std::string_view key) const;
  std::int64_t integer(std::string_view key) const;
  bool boolean(std::string_view key) const;
  const std::string& text(std::string_view key) const;

  std::uint64_t seed() const;
  unsigned threads() const;
  std::filesystem::path out_dir() const;
  OutputFormat format() const;
};

/// Parses "section.key=value".
std::pair<std::string, std::string> parse_assignment(std::string_view text);

/// defaults < file < overrides. Throws ConfigError naming the offending key.
RunConfig resolve_config(std::string subcommand, const std::optional<std::filesystem::path>& file,
                         const std::vector<std::pair<std::string, std::string>>& overrides);

/// Same, with the file supplied as text (for tests and piped input).
RunConfig resolve_config_text(std::string subcommand, std::string_view ini_text,
                              const std::vector<std::pair<std::string, std::string>>& overrides);

// Builders from a resolved configuration.
const ParameterTable& parameter_table(const RunConfig& cfg);
HaloModel halo_model(const RunConfig& cfg);
SensorStack sensor_stack(const RunConfig& cfg);
DetectionSettings detection_settings(const RunConfig& cfg);
MonteCarloOptions monte_carlo_options(const RunConfig& cfg);

}  // namespace axwind::cli
