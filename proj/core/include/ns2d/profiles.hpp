/// @file profiles.hpp
/// @brief Closed-form vorticity profiles of the Gaussian family.
#pragma once

#include <array>
#include <numbers>
#include <optional>
#include <string_view>

#include "ns2d/field.hpp"

namespace ns2d {

enum class Profile { G, F1, F2, H1, H2, H3, K, Phi, Psi2, Psi3 };

inline constexpr std::array<Profile, 10> kAllProfiles = {Profile::G,  Profile::F1, Profile::F2, Profile::H1,
                                                         Profile::H2, Profile::H3, Profile::K,  Profile::Phi,
                                                         Profile::Psi2, Profile::Psi3};

/// Exact interaction constant, the integral of xi1^2 xi2^2 Phi.
inline constexpr double kKappa = 1.0 / (32.0 * std::numbers::pi);

struct NamedProfile {
  Profile tag;
  std::string_view name;
  double (*evaluate)(double x1, double x2);
  bool has_closed_form_velocity;
};

const NamedProfile& named_profile(Profile tag);
std::optional<Profile> parse_profile(std::string_view name);

/// Samples the closed form on the grid.
RealField sample_profile(const Grid& grid, Profile tag);

/// Closed-form scalar evaluators.
double oseen_vortex(double x1, double x2);
/// Phi(s) = (8 pi^2 s^2)^-1 e^{-s/4} (e^{-s/4} - 1 + s/4), s = |xi|^2.
double interaction_density(double s);

}  // namespace ns2d
