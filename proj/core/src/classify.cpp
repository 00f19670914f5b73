#include "ns2d/classify.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ns2d/biot_savart.hpp"
#include "ns2d/error.hpp"
#include "ns2d/fields.hpp"

namespace ns2d {

namespace {

constexpr double kRateThreshold = -0.25;
constexpr double kResolutionFloor = 1e-10;
constexpr double kWindowLength = 6.0;
constexpr double kTraceFloor = 1e-12;

// Composite trapezoid with Simpson correction on uniform stretches.
double integrate_records(const std::vector<double>& t, const std::vector<double>& f) {
  double sum = 0.0;
  std::size_t i = 0;
  while (i + 2 < t.size()) {
    const double h0 = t[i + 1] - t[i], h1 = t[i + 2] - t[i + 1];
    if (std::abs(h0 - h1) > 1e-9 * h0) break;
    sum += h0 / 3.0 * (f[i] + 4.0 * f[i + 1] + f[i + 2]);
    i += 2;
  }
  for (; i + 1 < t.size(); ++i) sum += 0.5 * (t[i + 1] - t[i]) * (f[i] + f[i + 1]);
  return sum;
}

}  // namespace

RealField enforce_moment_condition(const RealField& w0) {
  const MomentSet m = extract_moments(w0);
  const auto family = gaussian_family(w0.grid());
  RealField out = w0;
  out.add_scaled(-m.alpha, family->vorticity[0]);
  out.add_scaled(-m.beta[0], family->vorticity[1]);
  out.add_scaled(-m.beta[1], family->vorticity[2]);
  return out;
}

OptimalDecayReport classify_optimal_decay(const RealField& w0, const Trajectory& traj) {
  const MomentSet m0 = extract_moments(w0);
  const double scale = std::max(lp_norm(w0, 1.0), 1e-300);
  const double tol = 1e-9 * std::max(1.0, scale);
  require(std::abs(m0.alpha) <= tol, "moment condition violated: alpha = " + std::to_string(m0.alpha));
  require(std::abs(m0.beta[0]) <= tol, "moment condition violated: beta1 = " + std::to_string(m0.beta[0]));
  require(std::abs(m0.beta[1]) <= tol, "moment condition violated: beta2 = " + std::to_string(m0.beta[1]));
  const auto& rec = traj.records();
  require(rec.size() >= 8, "classification needs at least eight trajectory records");
  require(rec.front().tau == 0.0, "trajectory must start at tau = 0");

  OptimalDecayReport r;
  r.gamma0 = m0.gamma;

  // b_kl at t = 0, where x = xi and u0 = v
  const VectorField v0 = hybrid_velocity(w0);
  const Grid& g = w0.grid();
  for (int i1 = 0; i1 < g.n(); ++i1) {
    for (int i2 = 0; i2 < g.n(); ++i2) {
      const double x[2] = {g.coord(i1), g.coord(i2)};
      const double u[2] = {v0.v1(i1, i2), v0.v2(i1, i2)};
      for (int k = 0; k < 2; ++k) {
        for (int l = 0; l < 2; ++l) r.b_moments[k][l] += x[l] * u[k];
      }
    }
  }
  for (auto& row : r.b_moments) {
    for (double& x : row) x *= g.cell_area();
  }

  // c_kl by quadrature over the records, with an exponential tail bound
  std::vector<double> t, f11, f22, f12, trace;
  for (const auto& x : rec) {
    const double e = std::exp(x.tau);
    t.push_back(x.tau);
    f11.push_back(e * x.v11);
    f22.push_back(e * x.v22);
    f12.push_back(e * x.v12);
    trace.push_back(e * (x.v11 + x.v22));
  }
  r.c_moments[0][0] = integrate_records(t, f11);
  r.c_moments[1][1] = integrate_records(t, f22);
  r.c_moments[0][1] = r.c_moments[1][0] = integrate_records(t, f12);
  const double total = r.c_moments[0][0] + r.c_moments[1][1];
  const double tau_end = t.back();
  if (total > 0.0) {
    // fit the integrand before it sinks into roundoff; past that point the tail is negligible anyway
    const double peak = *std::max_element(trace.begin(), trace.end());
    std::size_t last = trace.size() - 1;
    for (std::size_t i = 0; i < trace.size(); ++i) {
      if (trace[i] < kTraceFloor * peak) {
        last = i;
        break;
      }
    }
    const double tau_c = t[last];
    const DecayFit tail_fit = fit_decay(t, trace, std::max(t.front(), tau_c - 2.0), tau_c);
    r.tail_fraction = tail_fit.rate < -0.05 ? trace[last] / (-tail_fit.rate) / total : kInfinity;
    if (r.tail_fraction > 0.01) {
      throw ClassificationError("time-integral tail is " + std::to_string(100.0 * r.tail_fraction) +
                                "% of the total; extend tau_end");
    }
  }

  // (2) and (3) over a late window that stops once e^tau ||w|| is below resolution
  std::vector<double> y, z;
  for (const auto& x : rec) {
    y.push_back(std::exp(x.tau) * x.wm_norm_fast);
    z.push_back(std::expm1(x.tau) * x.v_l2_fast);
  }
  double tau_stop = tau_end;
  for (std::size_t i = 0; i < rec.size(); ++i) {
    if (y[i] < kResolutionFloor * y.front()) {
      tau_stop = t[i];
      break;
    }
  }
  const double lo = std::max(tau_stop - kWindowLength, 0.5 * tau_stop);
  r.weighted_norm_fit = fit_decay(t, y, lo, tau_stop);
  r.weighted_norm_decays = r.weighted_norm_fit.rate <= kRateThreshold;
  r.energy_fit = fit_decay(t, z, lo, tau_stop);
  r.energy_decays = r.energy_fit.rate <= kRateThreshold;

  // (4)
  r.moment_residuals = {m0.gamma[0], m0.gamma[1] - r.c_moments[0][1],
                        m0.gamma[2] - (r.c_moments[1][1] - r.c_moments[0][0])};
  r.moment_tolerance =
      1e-2 * (std::abs(m0.gamma[0]) + std::abs(m0.gamma[1]) + std::abs(m0.gamma[2]) + std::max(total, 0.0));
  r.moment_conditions = true;
  for (double x : r.moment_residuals) r.moment_conditions = r.moment_conditions && std::abs(x) <= r.moment_tolerance;

  r.classification = r.moment_conditions ? Classification::OnStableManifold : Classification::OffStableManifold;
  r.consistent = (r.weighted_norm_decays == r.moment_conditions) && (r.energy_decays == r.moment_conditions);
  return r;
}

}  // namespace ns2d
