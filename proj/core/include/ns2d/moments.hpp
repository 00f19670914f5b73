/// @file moments.hpp
/// @brief Low-order moments that project a vorticity onto the Gaussian family.
#pragma once

#include <array>

#include "ns2d/field.hpp"

namespace ns2d {

/// alpha = int w, beta_i = -int xi_i w, gamma_j = int p_j w with
/// p1 = (|xi|^2 - 4)/4, p2 = (xi1^2 - xi2^2)/4, p3 = xi1 xi2.
/// These are biorthogonal to (G, F1, F2, H1, H2, H3).
struct MomentSet {
  double alpha = 0.0;
  std::array<double, 2> beta{};
  std::array<double, 3> gamma{};

  /// (alpha, beta1, beta2, gamma1, gamma2, gamma3)
  std::array<double, 6> as_array() const { return {alpha, beta[0], beta[1], gamma[0], gamma[1], gamma[2]}; }
};

MomentSet extract_moments(const RealField& w);

}  // namespace ns2d
