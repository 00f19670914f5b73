/// @file recipe.hpp
/// @brief Initial data as "c*NAME + c*phi(a,b) - ..." over the named profiles and Hermite functions.
#pragma once

#include <string_view>
#include <variant>
#include <vector>

#include "ns2d/field.hpp"
#include "ns2d/hermite.hpp"
#include "ns2d/profiles.hpp"

namespace ns2d::cli {

struct RecipeTerm {
  double coefficient = 1.0;
  std::variant<Profile, HermiteIndex> shape;
};

/// Throws ConfigError with the offending position on malformed input.
std::vector<RecipeTerm> parse_recipe(std::string_view text);
RealField evaluate_recipe(const Grid& grid, const std::vector<RecipeTerm>& terms);

}  // namespace ns2d::cli
