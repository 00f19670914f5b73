/// @file fields.hpp
/// @brief Transforms, quadrature, norms and spectral derivatives on the periodic grid.
#pragma once

#include <limits>

#include "ns2d/field.hpp"

namespace ns2d {

/// Polynomial weight (1 + |xi|^2)^(m/2) used by the weighted L2 norm.
struct WeightSpec {
  static constexpr double kMaxExponent = 6.0;
  double m;

  /// Throws PreconditionError unless 0 <= m <= kMaxExponent.
  explicit WeightSpec(double exponent);
  double operator()(double x1, double x2) const;
};

/// Continuous-convention transform: h^2 (-1)^(k1+k2) DFT.
SpectralField forward_transform(const RealField& w);
RealField inverse_transform(const SpectralField& w_hat);

/// Midpoint (trapezoidal on the torus) quadrature h^2 sum w.
double integrate(const RealField& w);

/// (h^2 sum |w|^p)^(1/p); p = infinity gives the max norm.
double lp_norm(const RealField& w, double p);
double lp_norm(const VectorField& v, double p);

/// Weighted L2 norm. Emits warning "weight_truncation" when the weighted
/// density at the box boundary exceeds 1e-10 of its maximum.
double weighted_norm(const RealField& w, WeightSpec weight);

/// Spectral partial derivative along axis 0 or 1. Nyquist modes are dropped.
RealField spectral_derivative(const RealField& w, int axis);

/// Zeroes modes with |k_i| > n/3 along either axis.
SpectralField dealias(const SpectralField& w_hat);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

}  // namespace ns2d
