#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>

#include "doflab/cli.hpp"
#include "doflab/error.hpp"

namespace doflab {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void CsvTable::add_row(std::vector<std::string> row) {
  require(row.size() == header.size(), "csv row width does not match the header");
  rows.push_back(std::move(row));
}

std::size_t CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw InvalidArgument("no csv column '" + std::string(name) + "'");
}

double CsvTable::number(std::size_t row, std::string_view name) const {
  const std::string& s = rows.at(row).at(column(name));
  if (s.empty()) return std::nan("");
  return std::strtod(s.c_str(), nullptr);
}

std::string CsvTable::str() const {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += quote(cells[i]);
    }
    out += '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out;
}

std::string Manifest::str() const {
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016" PRIx64, fnv1a64(config));
  nlohmann::ordered_json j;
  j["tool"] = "doflab";
  j["tool_version"] = kToolVersion;
  j["kind"] = kind;
  if (!figure.empty()) j["figure"] = figure;
  j["seed"] = seed;
  j["reps"] = reps;
  j["config_hash"] = std::string("fnv1a64:") + hash;
  j["config"] = nlohmann::json::parse(config);
  return j.dump(2) + "\n";
}

Manifest make_manifest(const ExperimentConfig& cfg) {
  Manifest m;
  m.config = canonical_config(cfg);
  m.seed = cfg.seed;
  m.reps = cfg.estimator.n_reps;
  m.kind = to_string(cfg.kind);
  m.figure = cfg.figure;
  return m;
}

void write_csv(const std::string& path, const CsvTable& table, const Manifest& manifest) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  auto put = [](const std::string& file, const std::string& text) {
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidArgument("cannot write '" + file + "'");
    out << text;
    if (!out) throw InvalidArgument("failed writing '" + file + "'");
  };
  put(path, table.str());
  put(path + ".manifest.json", manifest.str());
}

}  // namespace doflab
