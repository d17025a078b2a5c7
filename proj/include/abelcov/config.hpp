#pragma once

// Cover configuration files: a TOML subset with the sections
//   [surface] preset = "p1xp1" | "p2"
//   [group] rank = 4                     (optional; else the key length)
//   [branch] 1000 = "2F" ...             (sigma = class)
//   [bundles] 0001 = "F+2G" ...          (optional; solved when absent)
//   [assumptions] components_smooth / pairwise_distinct / normal_crossings
//   [expected] K2 / pg / q / chi         (optional self-check)

#include <abelcov/building.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace abelcov {

class ConfigError : public InputError {
 public:
  ConfigError(int line, int column, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

struct ConfigEntry {
  std::string key;
  std::string value;
  int line = 0;
  int column = 0;

  friend bool operator==(const ConfigEntry& a, const ConfigEntry& b) {
    return a.key == b.key && a.value == b.value;
  }
};

struct CoverConfig {
  std::string preset = "p1xp1";
  int rank = 0;
  std::vector<ConfigEntry> branch;
  std::vector<ConfigEntry> bundles;
  Assumptions assumptions;
  std::map<std::string, std::int64_t> expected;  // keys among K2, pg, q, chi

  friend bool operator==(const CoverConfig&, const CoverConfig&) = default;
};

/// Parses and checks a config; ConfigError carries the offending position.
CoverConfig parse_config(std::string_view text);

CoverConfig load_config(const std::string& path);

std::string render_config(const CoverConfig& config);

/// Builds the building data; bundles are solved when the config has none.
BuildingData to_building_data(const CoverConfig& config);

CoverConfig to_config(const BuildingData& data, const std::map<std::string, std::int64_t>& expected = {});

}  // namespace abelcov
