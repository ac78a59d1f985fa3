#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rmtlab {

/// A run is a pure function of its config: subcommand, parameter map, seed,
/// output path and format. Identical configs produce byte-identical outputs.
struct RunConfig {
  std::string subcommand;
  std::map<std::string, std::string> params;
  std::uint64_t seed = 0;
  std::string output;          // empty = stdout
  std::string format = "csv";  // csv | json

  std::string get(const std::string& key, const std::string& fallback = "") const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  bool has(const std::string& key) const { return params.count(key) > 0; }

  /// Loads key=value lines ('#' comments allowed).
  static RunConfig from_file(const std::string& path);
  /// Applies --key value pairs; recognizes seed/output/format specially.
  void apply_override(const std::string& key, const std::string& value);

  std::vector<std::string> provenance_lines(const std::string& version) const;
  /// Re-parses an emitted provenance header into an equivalent config.
  static RunConfig parse_provenance(const std::vector<std::string>& lines);
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row) { rows.push_back(std::move(row)); }
};

/// 17 significant digits; bit-faithful round trip of doubles.
std::string format_double(double v);

/// Writes provenance plus the table in the requested format. Empty path
/// writes to stdout.
void write_table(const RunConfig& config, const Table& table, const std::string& version);

}  // namespace rmtlab
