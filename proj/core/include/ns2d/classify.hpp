/// @file classify.hpp
/// @brief Decides whether mean-free, first-moment-free data decay faster than
/// e^{-tau} (the strong stable manifold) by three independent criteria.
#pragma once

#include <array>
#include <stdexcept>

#include "ns2d/decay_fit.hpp"
#include "ns2d/evolution.hpp"

namespace ns2d {

/// Raised when the trajectory is too short to bound the time-integral tail.
class ClassificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Classification { OnStableManifold, OffStableManifold };

struct OptimalDecayReport {
  /// b[k][l] = int x_l u0_k; c[k][l] = int_0^inf int u_k u_l dx dt = int e^tau int v_k v_l dxi dtau.
  std::array<std::array<double, 2>, 2> b_moments{};
  std::array<std::array<double, 2>, 2> c_moments{};
  std::array<double, 3> gamma0{};
  double tail_fraction = 0.0;

  /// (2): rate of e^tau ||w||_m over the late window is <= -0.25.
  DecayFit weighted_norm_fit;
  bool weighted_norm_decays = false;
  /// (3): rate of t |u(t)|_2 = (e^tau - 1)|v|_2 over the same window is <= -0.25.
  DecayFit energy_fit;
  bool energy_decays = false;
  /// (4): gamma1(0) = 0, gamma2(0) = c12, gamma3(0) = c22 - c11.
  std::array<double, 3> moment_residuals{};
  double moment_tolerance = 0.0;
  bool moment_conditions = false;

  Classification classification = Classification::OffStableManifold;
  bool consistent = false;  ///< (2), (3) and (4) agree
};

/// Requires alpha = beta = 0 for w0 (PreconditionError) and a trajectory started from w0
/// with in-memory velocity records. Throws ClassificationError if the tail of the c integrals
/// exceeds 1% of their value.
OptimalDecayReport classify_optimal_decay(const RealField& w0, const Trajectory& traj);

/// Removes the residual mass and first-moment components left by quadrature.
RealField enforce_moment_condition(const RealField& w0);

}  // namespace ns2d
