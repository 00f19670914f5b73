#include "ns2d/asymptotics.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <string>

#include "ns2d/biot_savart.hpp"
#include "ns2d/error.hpp"
#include "ns2d/fields.hpp"
#include "ns2d/profiles.hpp"
#include "ns2d/spectral_operator.hpp"

namespace ns2d {

//==============================================================================
// Interaction density and resolvent profiles
//==============================================================================

RealField phi_interaction(const Grid& grid) { return sample_profile(grid, Profile::Phi); }

namespace {

double weighted_quadrature(const RealField& f, double (*weight)(double, double)) {
  const Grid& g = f.grid();
  double sum = 0.0;
  for (int i1 = 0; i1 < g.n(); ++i1) {
    for (int i2 = 0; i2 < g.n(); ++i2) sum += weight(g.coord(i1), g.coord(i2)) * f(i1, i2);
  }
  return sum * g.cell_area();
}

// Nodes and weights on [0, 1].
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
  std::vector<double> x(n), w(n);
  for (int i = 0; i < n; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = 0.5 * (1.0 - z);
    w[i] = 1.0 / ((1.0 - z * z) * dp * dp);
  }
  return {x, w};
}

}  // namespace

double kappa(const Grid& grid) {
  return weighted_quadrature(phi_interaction(grid), [](double a, double b) { return a * a * b * b; });
}

double kappa_alternative(const Grid& grid) {
  return weighted_quadrature(phi_interaction(grid), [](double a, double b) {
    const double d = a * a - b * b;
    return 0.25 * d * d;
  });
}

PsiProfiles psi_profiles(const Grid& grid) {
  const double k = kappa(grid);
  const RealField phi = phi_interaction(grid);
  const RealField h2 = sample_profile(grid, Profile::H2);
  const RealField h3 = sample_profile(grid, Profile::H3);
  RealField psi2 = RealField::sample(grid, [](double a, double b) { return a * a - b * b; });
  RealField psi3 = RealField::sample(grid, [](double a, double b) { return a * b; });
  for (std::size_t i = 0; i < psi2.values().size(); ++i) {
    psi2.values()[i] = psi2.values()[i] * phi.values()[i] - k * h2.values()[i];
    psi3.values()[i] = psi3.values()[i] * phi.values()[i] - k * h3.values()[i];
  }
  for (const RealField* f : {&psi2, &psi3}) {
    for (double m : extract_moments(*f).as_array()) {
      if (std::abs(m) > 1e-7) throw std::runtime_error("interaction profile has a nonzero low moment");
    }
  }
  return {std::move(psi2), std::move(psi3), k};
}

RealField resolvent_solve(const RealField& f, int nodes) {
  require(nodes >= 4, "resolvent quadrature needs at least four nodes");
  const double scale = std::max(lp_norm(f, 2.0), 1e-300);
  for (const auto& [alpha, c] : hermite_coefficients(f, 2)) {
    require(std::abs(c) <= 1e-7 * std::max(1.0, scale),
            "resolvent input has a Hermite component of order <= 2 (order " + std::to_string(alpha.order()) + ")");
  }
  RealField u(f.grid());
  if (f.max_abs() == 0.0) return u;
  const auto [x, w] = gauss_legendre(nodes);
  for (int i = 0; i < nodes; ++i) {
    const double s = -2.0 * std::log(x[i]);
    u.add_scaled(-2.0 * w[i] / (x[i] * x[i] * x[i]), semigroup_apply(f, s));
  }
  return u;
}

//==============================================================================
// Asymptotic profiles
//==============================================================================

AsymptoticProfile::AsymptoticProfile(const Grid& grid, ProfileOrder order, const ProfileCoefficients& coeffs)
    : grid_(grid), order_(order), coeffs_(coeffs), kappa_(kKappa) {
  for (double v : {coeffs.A, coeffs.b[0], coeffs.b[1], coeffs.c[0], coeffs.c[1], coeffs.c[2]}) {
    require(std::isfinite(v), "profile coefficients must be finite");
  }
  if (order_ == ProfileOrder::Second) {
    const PsiProfiles psi = psi_profiles(grid);
    kappa_ = psi.kappa;
    resolvent_.emplace(resolvent_solve(psi.psi2), resolvent_solve(psi.psi3));
  }
}

RealField AsymptoticProfile::evaluate(double tau) const {
  const auto family = gaussian_family(grid_);
  const auto& v = family->vorticity;  // G, F1, F2, H1, H2, H3
  const auto& [A, b, c] = coeffs_;
  RealField out(grid_);
  if (A != 0.0) out.add_scaled(A, v[0]);
  if (order_ == ProfileOrder::Oseen) return out;
  const double e1 = std::exp(-0.5 * tau);
  out.add_scaled(e1 * b[0], v[1]);
  out.add_scaled(e1 * b[1], v[2]);
  if (order_ == ProfileOrder::First) return out;
  const double e2 = std::exp(-tau);
  const double q = b[0] * b[1];
  const double d = b[0] * b[0] - b[1] * b[1];
  out.add_scaled(e2 * c[0], v[3]);
  out.add_scaled(e2 * (c[1] + kappa_ * tau * q), v[4]);
  out.add_scaled(e2 * (c[2] - kappa_ * tau * d), v[5]);
  out.add_scaled(-e2 * q, resolvent_->first);
  out.add_scaled(e2 * d, resolvent_->second);
  return out;
}

RealField build_profile(const Grid& grid, ProfileOrder order, const ProfileCoefficients& coeffs, double tau) {
  return AsymptoticProfile(grid, order, coeffs).evaluate(tau);
}

ProfileCoefficients estimate_profile_coefficients(const Trajectory& traj, double tau_ref) {
  const auto& rec = traj.records();
  require(!rec.empty(), "empty trajectory");
  const TrajectoryRecord* best = &rec.front();
  for (const auto& r : rec) {
    if (std::abs(r.tau - tau_ref) < std::abs(best->tau - tau_ref)) best = &r;
  }
  const double t = best->tau;
  const MomentSet& m = best->moments;
  ProfileCoefficients c;
  c.A = m.alpha;
  c.b = {std::exp(0.5 * t) * m.beta[0], std::exp(0.5 * t) * m.beta[1]};
  const double k = kKappa;
  c.c[0] = std::exp(t) * m.gamma[0];
  c.c[1] = std::exp(t) * m.gamma[1] - k * t * c.b[0] * c.b[1];
  c.c[2] = std::exp(t) * m.gamma[2] + k * t * (c.b[0] * c.b[0] - c.b[1] * c.b[1]);
  return c;
}

//==============================================================================
// Fits
//==============================================================================

DecayFit fit_decay(const Trajectory& traj, const Observable& observable, double tau_lo, double tau_hi) {
  std::vector<double> t, y;
  for (const auto& r : traj.records()) {
    if (r.tau < tau_lo - 1e-12 || r.tau > tau_hi + 1e-12) continue;
    const double v = observable(r);
    require(v > 0.0, "observable must stay positive on the fit window");
    t.push_back(r.tau);
    y.push_back(v);
  }
  return fit_decay(t, y, tau_lo, tau_hi);
}

namespace {

struct LinearFit {
  Eigen::VectorXd coef;
  double rms;
};

LinearFit least_squares(const std::vector<double>& t, const std::vector<double>& y,
                        const std::vector<std::function<double(double)>>& basis) {
  Eigen::MatrixXd a(t.size(), basis.size());
  Eigen::VectorXd b(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t j = 0; j < basis.size(); ++j) a(i, j) = basis[j](t[i]);
    b(i) = y[i];
  }
  LinearFit fit;
  fit.coef = a.colPivHouseholderQr().solve(b);
  fit.rms = std::sqrt((a * fit.coef - b).squaredNorm() / static_cast<double>(t.size()));
  return fit;
}

}  // namespace

SecularReport secular_slope(const Trajectory& traj, double tau_lo, double tau_hi) {
  const auto& rec = traj.records();
  require(rec.size() >= 2, "secular fit needs a trajectory");
  SecularReport r;
  r.tau_lo = tau_lo;
  r.tau_hi = tau_hi;
  const MomentSet& m0 = rec.front().moments;
  r.b = m0.beta;
  r.predicted2 = kKappa * r.b[0] * r.b[1];
  r.predicted3 = -kKappa * (r.b[0] * r.b[0] - r.b[1] * r.b[1]);

  std::vector<double> t, y2, y3;
  for (const auto& x : rec) {
    if (x.tau < tau_lo - 1e-12 || x.tau > tau_hi + 1e-12) continue;
    t.push_back(x.tau);
    y2.push_back(std::exp(x.tau) * x.moments.gamma[1]);
    y3.push_back(std::exp(x.tau) * x.moments.gamma[2]);
  }
  require(t.size() >= 6, "secular fit window needs at least six records");
  const std::vector<std::function<double(double)>> secular = {
      [](double) { return 1.0; }, [](double s) { return s; }, [](double s) { return std::exp(-0.5 * s); }};
  const std::vector<std::function<double(double)>> exponential = {
      [](double) { return 1.0; }, [](double s) { return std::exp(-0.5 * s); }, [](double s) { return std::exp(-s); }};
  const std::vector<std::function<double(double)>> line = {[](double) { return 1.0; }, [](double s) { return s; }};

  const LinearFit s2 = least_squares(t, y2, secular);
  const LinearFit s3 = least_squares(t, y3, secular);
  r.slope2 = s2.coef(1);
  r.slope3 = s3.coef(1);
  r.secular_residual2 = s2.rms;
  r.exponential_residual2 = least_squares(t, y2, exponential).rms;

  const double scale = std::max(std::abs(r.predicted2), std::abs(r.predicted3));
  if (scale > 0.0) {
    const double d2 = std::abs(least_squares(t, y2, line).coef(1) - r.slope2);
    const double d3 = std::abs(least_squares(t, y3, line).coef(1) - r.slope3);
    r.contaminated = std::max(d2, d3) > 0.3 * scale;
    if (r.contaminated) {
      warn("secular_contamination", "higher-order terms shift the secular slope by more than 30% of the prediction");
    }
  }
  return r;
}

//==============================================================================
// Normal form
//==============================================================================

namespace {

double x_abs_log(double x) { return x == 0.0 ? 0.0 : x * std::abs(std::log(std::abs(x))); }

}  // namespace

std::array<double, 3> normal_form(const std::array<double, 3>& gamma, const std::array<double, 2>& beta) {
  const double b12 = beta[0] * beta[1];
  return {gamma[0], gamma[1] + kKappa * x_abs_log(b12),
          gamma[2] - kKappa * (x_abs_log(beta[0] * beta[0]) - x_abs_log(beta[1] * beta[1]))};
}

std::array<double, 3> inverse_normal_form(const std::array<double, 3>& Gamma, const std::array<double, 2>& beta) {
  const double b12 = beta[0] * beta[1];
  return {Gamma[0], Gamma[1] - kKappa * x_abs_log(b12),
          Gamma[2] + kKappa * (x_abs_log(beta[0] * beta[0]) - x_abs_log(beta[1] * beta[1]))};
}

//==============================================================================
// Velocity moments
//==============================================================================

std::pair<double, double> f2_f3(const RealField& w) {
  const MomentSet m = extract_moments(w);
  const double scale = std::max(lp_norm(w, 1.0), 1e-300);
  if (std::abs(m.alpha) > 1e-10 * scale || std::abs(m.beta[0]) > 1e-10 * scale ||
      std::abs(m.beta[1]) > 1e-10 * scale) {
    warn("moment_condition", "mass or first moments are nonzero; velocity integrals depend on the box");
  }
  const VectorField v = hybrid_velocity(w);
  double s12 = 0.0, sd = 0.0;
  const auto a = v.v1.values();
  const auto b = v.v2.values();
  for (std::size_t i = 0; i < a.size(); ++i) {
    s12 += a[i] * b[i];
    sd += a[i] * a[i] - b[i] * b[i];
  }
  const double h2 = w.grid().cell_area();
  return {-s12 * h2, sd * h2};
}

double quadratic_transport_moment(const RealField& w, double c11, double c12, double c22) {
  const VectorField v = hybrid_velocity(w);
  const RealField d1 = spectral_derivative(w, 0);
  const RealField d2 = spectral_derivative(w, 1);
  const Grid& g = w.grid();
  double sum = 0.0;
  for (int i1 = 0; i1 < g.n(); ++i1) {
    const double x1 = g.coord(i1);
    for (int i2 = 0; i2 < g.n(); ++i2) {
      const double x2 = g.coord(i2);
      const double p = c11 * x1 * x1 + c12 * x1 * x2 + c22 * x2 * x2;
      sum += p * (v.v1(i1, i2) * d1(i1, i2) + v.v2(i1, i2) * d2(i1, i2));
    }
  }
  return sum * g.cell_area();
}

VelocityIntegrabilityReport velocity_integrability(const RealField& w, double tolerance) {
  const MomentSet m = extract_moments(w);
  VelocityIntegrabilityReport r;
  r.mass_free = std::abs(m.alpha) <= tolerance;
  r.first_moments_free = std::abs(m.beta[0]) <= tolerance && std::abs(m.beta[1]) <= tolerance;
  r.quadratic_moments_free = std::abs(m.gamma[1]) <= tolerance && std::abs(m.gamma[2]) <= tolerance;
  r.v_in_L2 = r.mass_free;
  r.v_in_L1 = r.mass_free && r.first_moments_free;
  r.weighted_v_in_L1 = r.v_in_L1 && r.quadratic_moments_free;
  r.gamma1 = m.gamma[0];
  const VectorField v = hybrid_velocity(w);
  const Grid& g = w.grid();
  double a = 0.0, b = 0.0;
  for (int i1 = 0; i1 < g.n(); ++i1) {
    for (int i2 = 0; i2 < g.n(); ++i2) {
      a += g.coord(i2) * v.v1(i1, i2);
      b += g.coord(i1) * v.v2(i1, i2);
    }
  }
  r.xi2_v1 = a * g.cell_area();
  r.xi1_v2 = b * g.cell_area();
  if (r.weighted_v_in_L1) {
    const double tol = std::max(0.01 * std::abs(r.gamma1), tolerance);
    r.gamma1_identity_ok = std::abs(r.xi2_v1 - r.gamma1) <= tol && std::abs(-r.xi1_v2 - r.gamma1) <= tol;
  }
  return r;
}

}  // namespace ns2d
