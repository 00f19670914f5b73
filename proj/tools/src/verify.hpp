/// @file verify.hpp
/// @brief The self-contained verification battery behind `ns2d verify`.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ns2d/grid.hpp"

namespace ns2d::cli {

struct CheckResult {
  std::string suite;
  std::string name;
  double measured = 0.0;
  double expected = 0.0;
  std::string relation;  ///< how measured is compared, e.g. "|x-e|<=1e-6" or "<=-1.45"
  bool pass = false;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"constants", "spectrum", "semigroup", "conservation", "asymptotics"};
  return names;
}

/// suite is one of suite_names() or "all". Throws ConfigError for unknown suites.
std::vector<CheckResult> run_suite(const std::string& suite, const Grid& grid, std::uint64_t seed);

void print_table(std::ostream& os, const std::vector<CheckResult>& results);
void to_json(nlohmann::json& j, const CheckResult& r);

}  // namespace ns2d::cli
