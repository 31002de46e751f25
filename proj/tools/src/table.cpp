#include "axwind_cli/table.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "axwind/errors.hpp"
#include "axwind/version.hpp"

namespace axwind::cli {

namespace {

using nlohmann::ordered_json;

ordered_json cell_json(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return std::isfinite(*d) ? ordered_json(*d) : ordered_json(nullptr);
  if (const auto* i = std::get_if<std::int64_t>(&c)) return *i;
  return std::get<std::string>(c);
}

ordered_json typed_value(const SchemaEntry& e, const RunConfig& cfg) {
  switch (e.type) {
    case ValueType::Real: return cfg.real(e.key);
    case ValueType::Integer: return cfg.integer(e.key);
    case ValueType::Boolean: return cfg.boolean(e.key);
    case ValueType::Text: return cfg.text(e.key);
  }
  return nullptr;
}

ordered_json config_json(const RunConfig& cfg) {
  ordered_json out = ordered_json::object();
  for (const auto& e : schema()) {
    const auto dot = e.key.find('.');
    out[e.key.substr(0, dot)][e.key.substr(dot + 1)] = typed_value(e, cfg);
  }
  return out;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  return out;
}

}  // namespace

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw Error("table '" + name + "': row width does not match the header");
  rows.push_back(std::move(row));
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string format_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  return std::get<std::string>(c);
}

void write_csv(std::ostream& out, const Table& table) {
  for (const auto& [k, v] : table.metadata) out << "# " << k << ": " << v << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_cell(row[i]);
    out << '\n';
  }
}

std::string write_table(const RunConfig& cfg, const Table& table) {
  if (cfg.format() == OutputFormat::Csv) {
    const std::string file = table.name + ".csv";
    auto out = open_output(cfg.out_dir() / file);
    write_csv(out, table);
    return file;
  }
  ordered_json doc;
  doc["name"] = table.name;
  doc["version"] = kVersion;
  doc["config"] = config_json(cfg);
  ordered_json meta = ordered_json::object();
  for (const auto& [k, v] : table.metadata) meta[k] = v;
  doc["metadata"] = meta;
  doc["columns"] = table.columns;
  ordered_json rows = ordered_json::array();
  for (const auto& row : table.rows) {
    ordered_json r = ordered_json::array();
    for (const auto& c : row) r.push_back(cell_json(c));
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  const std::string file = table.name + ".json";
  auto out = open_output(cfg.out_dir() / file);
  out << doc.dump(1) << '\n';
  return file;
}

void write_manifest(const RunConfig& cfg, const std::vector<std::string>& outputs) {
  ordered_json doc;
  doc["artifact"] = "axwind";
  doc["version"] = kVersion;
  doc["subcommand"] = cfg.subcommand;
  doc["config_file"] = cfg.config_file ? cfg.config_file->string() : std::string();
  ordered_json overrides = ordered_json::array();
  for (const auto& [k, v] : cfg.overrides) overrides.push_back(k + "=" + v);
  doc["overrides"] = std::move(overrides);
  doc["config"] = config_json(cfg);
  doc["outputs"] = outputs;
  auto out = open_output(cfg.out_dir() / "manifest.json");
  out << doc.dump(1) << '\n';
}

std::vector<std::pair<std::string, std::string>> noise_metadata(const RunConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const char* key : {"noise.eta_electron", "noise.eta_nuclear", "noise.corner_hz", "noise.exponent",
                          "noise.readout_variance", "detection.sigma", "detection.stacking_exponent"})
    out.emplace_back(key, cfg.text(key));
  return out;
}

}  // namespace axwind::cli
