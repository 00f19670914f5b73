/// @file hermite.hpp
/// @brief Hermite functions (derivatives of the Gaussian) and their dual polynomials.
#pragma once

#include <array>

#include "ns2d/field.hpp"

namespace ns2d {

struct HermiteIndex {
  static constexpr int kMaxOrder = 6;
  int a1 = 0;
  int a2 = 0;

  /// Throws PreconditionError for negative components or order above kMaxOrder.
  HermiteIndex(int first, int second);
  int order() const { return a1 + a2; }
  bool operator==(const HermiteIndex&) const = default;
};

/// Coefficients of p_k with d^k/dx^k e^{-x^2/4} = p_k(x) e^{-x^2/4}, lowest degree first.
const std::array<double, 7>& gaussian_derivative_coefficients(int k);

/// Bivariate polynomial sum c[i][j] x1^i x2^j with degrees up to 6.
struct Polynomial2D {
  std::array<std::array<double, 7>, 7> c{};
  double operator()(double x1, double x2) const;
};

/// phi_alpha = d^alpha G, with G = e^{-|xi|^2/4} / (4 pi).
double hermite_function_value(HermiteIndex alpha, double x1, double x2);
RealField hermite_function(const Grid& grid, HermiteIndex alpha);

/// H_alpha = (2^|alpha| / alpha!) e^{|xi|^2/4} d^alpha e^{-|xi|^2/4}; int H_alpha phi_beta = delta.
Polynomial2D hermite_polynomial(HermiteIndex alpha);

}  // namespace ns2d
