/// @file run_config.hpp
/// @brief Flat key = value run configuration with command line overrides.
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "ns2d/evolution.hpp"
#include "ns2d/grid.hpp"

namespace ns2d::cli {

/// Malformed configuration or recipe; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  int n = 256;
  double half_width = 12.0;
  SimConfig sim;
  std::string recipe;         ///< initial data as a linear combination of named profiles
  std::filesystem::path initial_file;  ///< alternative: binary field file
  std::filesystem::path out;
  std::uint64_t seed = 1;
  /// Keys explicitly set by file or override, so commands can pick their own defaults.
  std::vector<std::string> explicit_keys;

  /// Recognised keys: grid.n, grid.half_width, sim.dt, sim.tau_end, sim.record_every,
  /// sim.snapshot_every, sim.dealias, sim.hybrid_velocity, sim.weight_m, initial_data,
  /// initial_file, out, seed.
  void set(const std::string& key, const std::string& value);
  /// "key=value" as given to --set.
  void apply_override(const std::string& assignment);
  /// Lines of "key = value"; '#' starts a comment.
  void load_file(const std::filesystem::path& path);
  bool is_set(const std::string& key) const;

  Grid grid() const { return Grid(n, half_width); }
};

void to_json(nlohmann::json& j, const RunConfig& c);

}  // namespace ns2d::cli
