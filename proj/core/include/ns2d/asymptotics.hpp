/// @file asymptotics.hpp
/// @brief Long-time asymptotic profiles: the quadratic interaction density,
/// resolvent profiles, second-order approximations with secular terms,
/// rate fits and velocity moment diagnostics.
#pragma once

#include <array>
#include <functional>
#include <optional>

#include "ns2d/decay_fit.hpp"
#include "ns2d/evolution.hpp"
#include "ns2d/field.hpp"
#include "ns2d/moments.hpp"

namespace ns2d {

RealField phi_interaction(const Grid& grid);
/// Quadrature of xi1^2 xi2^2 Phi.
double kappa(const Grid& grid);
/// Quadrature of (xi1^2 - xi2^2)^2 Phi / 4, equal to kappa analytically.
double kappa_alternative(const Grid& grid);

struct PsiProfiles {
  RealField psi2;  ///< (xi1^2 - xi2^2) Phi - kappa H2
  RealField psi3;  ///< xi1 xi2 Phi - kappa H3
  double kappa;
};
/// Uses the grid quadrature of kappa. Throws std::runtime_error if any of the
/// six low moments exceeds 1e-7.
PsiProfiles psi_profiles(const Grid& grid);

/// u = (L + 1)^{-1} f for f without Hermite components of order <= 2, from
/// u = -2 int_0^1 x^-3 S(-2 log x) f dx by Gauss-Legendre quadrature.
RealField resolvent_solve(const RealField& f, int nodes = 48);

enum class ProfileOrder { Oseen, First, Second };

/// A: mass; b: first-order coefficients with beta(tau) = b e^{-tau/2};
/// c: second-order coefficients c' of H1, H2, H3.
struct ProfileCoefficients {
  double A = 0.0;
  std::array<double, 2> b{};
  std::array<double, 3> c{};
};

/// Oseen:  A G
/// First:  A G + e^{-tau/2} (b1 F1 + b2 F2)
/// Second: e^{-tau/2} b.F + e^{-tau} c'.H + kappa tau e^{-tau} (b1 b2 H2 - (b1^2 - b2^2) H3)
///         + e^{-tau} (-b1 b2 (L+1)^{-1} Psi2 + (b1^2 - b2^2) (L+1)^{-1} Psi3), plus A G.
class AsymptoticProfile {
 public:
  AsymptoticProfile(const Grid& grid, ProfileOrder order, const ProfileCoefficients& coeffs);

  RealField evaluate(double tau) const;
  ProfileOrder order() const { return order_; }
  const ProfileCoefficients& coefficients() const { return coeffs_; }
  bool includes_log_terms() const { return order_ == ProfileOrder::Second; }
  /// (L+1)^{-1} Psi2 and (L+1)^{-1} Psi3; empty below second order.
  const std::optional<std::pair<RealField, RealField>>& resolvent_parts() const { return resolvent_; }

 private:
  Grid grid_;
  ProfileOrder order_;
  ProfileCoefficients coeffs_;
  double kappa_;
  std::optional<std::pair<RealField, RealField>> resolvent_;
};

RealField build_profile(const Grid& grid, ProfileOrder order, const ProfileCoefficients& coeffs, double tau);

/// Second-order coefficients read off a trajectory at tau_ref: b = e^{tau/2} beta,
/// c' = e^{tau} gamma minus the secular contribution.
ProfileCoefficients estimate_profile_coefficients(const Trajectory& traj, double tau_ref);

using Observable = std::function<double(const TrajectoryRecord&)>;
DecayFit fit_decay(const Trajectory& traj, const Observable& observable, double tau_lo, double tau_hi);

struct SecularReport {
  double tau_lo = 0.0, tau_hi = 0.0;
  std::array<double, 2> b{};
  double slope2 = 0.0;       ///< tau coefficient of e^tau gamma2 in the fit {1, tau, e^{-tau/2}}
  double slope3 = 0.0;
  double predicted2 = 0.0;   ///< kappa b1 b2
  double predicted3 = 0.0;   ///< -kappa (b1^2 - b2^2)
  double secular_residual2 = 0.0;     ///< rms residual of the secular fit of e^tau gamma2
  double exponential_residual2 = 0.0; ///< rms residual of the fit {1, e^{-tau/2}, e^{-tau}}
  bool contaminated = false;
};

/// Emits warning "secular_contamination" when dropping the e^{-tau/2} term moves
/// the slope by more than 30% of the prediction.
SecularReport secular_slope(const Trajectory& traj, double tau_lo = 1.0, double tau_hi = 4.0);

/// Gamma1 = gamma1, Gamma2 = gamma2 + kappa b1 b2 |log|b1 b2||,
/// Gamma3 = gamma3 - kappa (b1^2 |log b1^2| - b2^2 |log b2^2|); terms with a zero factor vanish.
std::array<double, 3> normal_form(const std::array<double, 3>& gamma, const std::array<double, 2>& beta);
std::array<double, 3> inverse_normal_form(const std::array<double, 3>& Gamma, const std::array<double, 2>& beta);

/// (f2, f3) = (-int v1 v2, int (v1^2 - v2^2)) with the hybrid velocity.
/// Emits warning "moment_condition" if alpha or beta is not negligible.
std::pair<double, double> f2_f3(const RealField& w);

/// int p (v.grad) w for the quadratic polynomial p = c11 xi1^2 + c12 xi1 xi2 + c22 xi2^2 + linear + const.
double quadratic_transport_moment(const RealField& w, double c11, double c12, double c22);

struct VelocityIntegrabilityReport {
  bool mass_free = false;       ///< int w = 0
  bool first_moments_free = false;
  bool quadratic_moments_free = false;  ///< gamma2 = gamma3 = 0
  bool v_in_L2 = false;
  bool v_in_L1 = false;
  bool weighted_v_in_L1 = false;
  double gamma1 = 0.0;
  double xi2_v1 = 0.0;   ///< int xi2 v1
  double xi1_v2 = 0.0;   ///< int xi1 v2
  bool gamma1_identity_ok = false;  ///< checked only when all three conditions hold
};

VelocityIntegrabilityReport velocity_integrability(const RealField& w, double tolerance = 1e-8);

}  // namespace ns2d
