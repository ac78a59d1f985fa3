#include "rmtlab/runconfig.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace rmtlab {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

std::string RunConfig::get(const std::string& key, const std::string& fallback) const {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

double RunConfig::get_double(const std::string& key, double fallback) const {
  const auto it = params.find(key);
  if (it == params.end()) return fallback;
  try {
    return std::stod(it->second);
  } catch (const std::exception&) {
    throw std::invalid_argument("config field '" + key + "': not a number: " + it->second);
  }
}

int RunConfig::get_int(const std::string& key, int fallback) const {
  const auto it = params.find(key);
  if (it == params.end()) return fallback;
  try {
    return std::stoi(it->second);
  } catch (const std::exception&) {
    throw std::invalid_argument("config field '" + key + "': not an integer: " + it->second);
  }
}

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  RunConfig cfg;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line is not key=value: " + line);
    cfg.apply_override(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

void RunConfig::apply_override(const std::string& key, const std::string& value) {
  if (key == "subcommand") subcommand = value;
  else if (key == "seed") seed = std::stoull(value);
  else if (key == "output") output = value;
  else if (key == "format") format = value;
  else params[key] = value;
}

std::vector<std::string> RunConfig::provenance_lines(const std::string& version) const {
  std::vector<std::string> lines;
  lines.push_back("# rmtlab " + version);
  lines.push_back("# subcommand=" + subcommand);
  lines.push_back("# seed=" + std::to_string(seed));
  lines.push_back("# format=" + format);
  for (const auto& [k, v] : params) lines.push_back("# " + k + "=" + v);
  return lines;
}

RunConfig RunConfig::parse_provenance(const std::vector<std::string>& lines) {
  RunConfig cfg;
  for (const auto& raw : lines) {
    std::string line = trim(raw);
    if (line.rfind("#", 0) == 0) line = trim(line.substr(1));
    if (line.rfind("rmtlab", 0) == 0) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    cfg.apply_override(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_table(const RunConfig& config, const Table& table, const std::string& version) {
  std::ostringstream out;
  if (config.format == "csv") {
    for (const auto& line : config.provenance_lines(version)) out << line << "\n";
    for (std::size_t c = 0; c < table.columns.size(); ++c)
      out << table.columns[c] << (c + 1 < table.columns.size() ? "," : "");
    out << "\n";
    for (const auto& row : table.rows) {
      for (std::size_t c = 0; c < row.size(); ++c)
        out << row[c] << (c + 1 < row.size() ? "," : "");
      out << "\n";
    }
  } else if (config.format == "json") {
    nlohmann::json j;
    j["provenance"] = config.provenance_lines(version);
    j["columns"] = table.columns;
    j["rows"] = nlohmann::json::array();
    for (const auto& row : table.rows) j["rows"].push_back(row);
    out << j.dump(2) << "\n";
  } else {
    throw std::invalid_argument("unknown format: " + config.format);
  }

  if (config.output.empty()) {
    std::cout << out.str();
  } else {
    std::ofstream file(config.output, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file: " + config.output);
    file << out.str();
  }
}

}  // namespace rmtlab
