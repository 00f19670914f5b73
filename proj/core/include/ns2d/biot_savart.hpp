/// @file biot_savart.hpp
/// @brief Velocity from vorticity: spectral inversion, closed forms for the
/// Gaussian family, and velocity norm diagnostics.
#pragma once

#include <array>
#include <memory>
#include <vector>

#include "ns2d/field.hpp"
#include "ns2d/moments.hpp"
#include "ns2d/profiles.hpp"

namespace ns2d {

/// Oseen velocity (1/2pi) ((e^{-s/4} - 1)/s) (xi2, -xi1); zero at the origin.
std::array<double, 2> oseen_velocity(double x1, double x2);

/// Closed-form velocity of a named profile. Throws PreconditionError for Phi, Psi2, Psi3.
std::array<double, 2> profile_velocity(Profile tag, double x1, double x2);

VectorField named_velocity(const Grid& grid, Profile tag);

/// Periodic spectral inversion with zero mean velocity.
VectorField velocity_from_vorticity(const RealField& w);

/// Closed forms for the (G, F, H) components of w plus spectral inversion of the remainder.
/// Accurate on the whole plane up to the remainder's periodic images.
VectorField hybrid_velocity(const RealField& w);

/// Sampled vorticities and velocities of (G, F1, F2, H1, H2, H3) on one grid.
struct GaussianFamily {
  std::vector<RealField> vorticity;
  std::vector<VectorField> velocity;
};
std::shared_ptr<const GaussianFamily> gaussian_family(const Grid& grid);

/// Subtracts alpha G + beta.F + gamma.H.
RealField family_remainder(const RealField& w, const MomentSet& m);

RealField curl(const VectorField& v);
RealField divergence(const VectorField& v);

struct HlsEntry {
  double p;
  double q;
  double hls_ratio;          ///< |v|_q / |w|_p
  double interpolation_ratio;  ///< |v|_inf / (|w|_p^a |w|_q^(1-a)), 1/2 = a/p + (1-a)/q
};

struct HlsReport {
  std::vector<HlsEntry> entries;
  double gradient_ratio;  ///< |grad v|_2 / |w - mean w|_2
  bool gradient_flag;     ///< true when the gradient ratio deviates from 1 by more than 1e-8
  bool degenerate;        ///< w == 0, all ratios are NaN
};

/// Each pair must satisfy 1 < p < 2 < q < inf and 1/q = 1/p - 1/2.
HlsReport check_hls_bounds(const RealField& w, const std::vector<std::pair<double, double>>& pairs);

/// Log-log slope of the angular mean of |v| against r on [r1, r2], r2 <= 0.8 L.
double far_field_exponent(const VectorField& v, double r1, double r2);

}  // namespace ns2d
