#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "negcurv/models.hpp"

namespace negcurv {

/// Invalid configuration; `field()` names the offending key (may be empty).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& field, const std::string& what)
      : std::runtime_error(field.empty() ? what : field + ": " + what), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Flat key/value view of a config file, keys in sorted order.
using ConfigMap = std::map<std::string, std::string>;

/// Grammar, one statement per line:
///   line    := blank | comment | entry
///   comment := '#' anything
///   entry   := key '=' value [comment]
///   key     := word ('.' word)*,  word := [A-Za-z0-9_]+
/// Whitespace around keys and values is ignored. Duplicate keys are an error.
ConfigMap parse_config(const std::string& text);
ConfigMap load_config_file(const std::string& path);

struct RunConfig {
  std::string model;  // cusp | npc_base | infranil | type_k | product
  ModelParams params;
  double r_min = 0.0;
  double r_max = 0.0;
  double r_step = 0.1;
  int planes_per_r = 10000;
  int starts = 16;
  std::uint64_t seed = 0;
  double volume_r_hi = 0.0;
  std::string report_path;  // empty: standard output
  std::string csv_path;     // empty: no CSV
  ConfigMap echo;           // the parsed entries, for the report
};

/// Builds a RunConfig from parsed entries; unknown keys and out-of-range
/// values raise ConfigError. Unset r_min / r_max fall back to the model's
/// default range.
RunConfig make_run_config(const ConfigMap& entries);

/// Number of radii on the grid r_min, r_min + r_step, ..., r_max (inclusive up to rounding).
int grid_size(const RunConfig& c);
double grid_point(const RunConfig& c, int index);

}  // namespace negcurv
