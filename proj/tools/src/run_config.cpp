#include "run_config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

#include "ns2d/report_json.hpp"

namespace ns2d::cli {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double to_double(const std::string& key, const std::string& v) {
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(x)) {
    throw ConfigError("invalid number for " + key + ": '" + v + "'");
  }
  return x;
}

long long to_int(const std::string& key, const std::string& v) {
  long long x = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size()) throw ConfigError("invalid integer for " + key + ": '" + v + "'");
  return x;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "on") return true;
  if (v == "false" || v == "0" || v == "off") return false;
  throw ConfigError("invalid boolean for " + key + ": '" + v + "'");
}

}  // namespace

void RunConfig::set(const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  if (key == "grid.n") {
    n = static_cast<int>(to_int(key, v));
  } else if (key == "grid.half_width") {
    half_width = to_double(key, v);
  } else if (key == "sim.dt") {
    sim.dt = to_double(key, v);
  } else if (key == "sim.tau_end") {
    sim.tau_end = to_double(key, v);
  } else if (key == "sim.record_every") {
    sim.record_every = static_cast<int>(to_int(key, v));
  } else if (key == "sim.snapshot_every") {
    sim.snapshot_every = static_cast<int>(to_int(key, v));
  } else if (key == "sim.dealias") {
    sim.dealias = to_bool(key, v);
  } else if (key == "sim.hybrid_velocity") {
    sim.hybrid_velocity = to_bool(key, v);
  } else if (key == "sim.weight_m") {
    sim.weight_m = to_double(key, v);
  } else if (key == "initial_data") {
    recipe = v;
  } else if (key == "initial_file") {
    initial_file = v;
  } else if (key == "out") {
    out = v;
  } else if (key == "seed") {
    const long long s = to_int(key, v);
    if (s < 0) throw ConfigError("seed must be non-negative");
    seed = static_cast<std::uint64_t>(s);
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
  if (!is_set(key)) explicit_keys.push_back(key);
}

void RunConfig::apply_override(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError("override must be key=value: '" + assignment + "'");
  set(trim(std::string_view(assignment).substr(0, eq)), assignment.substr(eq + 1));
}

void RunConfig::load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": expected key = value");
    }
    set(trim(std::string_view(line).substr(0, eq)), line.substr(eq + 1));
  }
}

bool RunConfig::is_set(const std::string& key) const {
  return std::find(explicit_keys.begin(), explicit_keys.end(), key) != explicit_keys.end();
}

void to_json(nlohmann::json& j, const RunConfig& c) {
  j = {{"grid", {{"n", c.n}, {"half_width", c.half_width}}},
       {"sim", c.sim},
       {"initial_data", c.recipe},
       {"initial_file", c.initial_file.string()},
       {"out", c.out.string()},
       {"seed", c.seed}};
}

}  // namespace ns2d::cli
