#include "ns2d/biot_savart.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

#include "fft_plan.hpp"
#include "ns2d/error.hpp"
#include "ns2d/fields.hpp"

namespace ns2d {

namespace {

constexpr double kPi = std::numbers::pi;

// q(s) = g(s) / (2 pi) with g(s) = (e^{-s/4} - 1) / s, and its first two derivatives.
struct RadialFactor {
  double q, dq, d2q;
};

RadialFactor radial_factor(double s) {
  double g, dg, d2g;
  if (s < 2.0) {
    g = dg = d2g = 0.0;
    double c = 1.0;  // (-1/4)^k / k!
    double sp[32];
    sp[0] = 1.0;
    for (int i = 1; i < 32; ++i) sp[i] = sp[i - 1] * s;
    for (int k = 1; k < 28; ++k) {
      c *= -0.25 / k;
      g += c * sp[k - 1];
      if (k >= 2) dg += c * (k - 1) * sp[k - 2];
      if (k >= 3) d2g += c * (k - 1) * (k - 2) * sp[k - 3];
    }
  } else {
    const double e = std::exp(-0.25 * s);
    g = (e - 1.0) / s;
    dg = -e / (4.0 * s) - (e - 1.0) / (s * s);
    d2g = e / (16.0 * s) + e / (2.0 * s * s) + 2.0 * (e - 1.0) / (s * s * s);
  }
  const double k = 1.0 / (2.0 * kPi);
  return {k * g, k * dg, k * d2g};
}

}  // namespace

std::array<double, 2> oseen_velocity(double x1, double x2) {
  const double q = radial_factor(x1 * x1 + x2 * x2).q;
  return {q * x2, -q * x1};
}

std::array<double, 2> profile_velocity(Profile tag, double x1, double x2) {
  const double s = x1 * x1 + x2 * x2;
  switch (tag) {
    case Profile::G:
      return oseen_velocity(x1, x2);
    case Profile::F1: {
      const auto r = radial_factor(s);
      return {2.0 * x1 * r.dq * x2, -2.0 * x1 * r.dq * x1 - r.q};
    }
    case Profile::F2: {
      const auto r = radial_factor(s);
      return {2.0 * x2 * r.dq * x2 + r.q, -2.0 * x2 * r.dq * x1};
    }
    case Profile::H1: {
      const double g = 0.5 * oseen_vortex(x1, x2);
      return {g * x2, -g * x1};
    }
    case Profile::H2: {
      const auto r = radial_factor(s);
      const double a = 4.0 * (x1 * x1 - x2 * x2) * r.d2q;
      return {a * x2 - 4.0 * r.dq * x2, -a * x1 - 4.0 * r.dq * x1};
    }
    case Profile::H3: {
      const auto r = radial_factor(s);
      const double a = 4.0 * x1 * x2 * r.d2q;
      return {a * x2 + 2.0 * r.dq * x1, -a * x1 - 2.0 * r.dq * x2};
    }
    case Profile::K: {
      const double g = 0.25 * oseen_vortex(x1, x2);
      return {-g * x1 * x2, g * (x1 * x1 - 2.0)};
    }
    default:
      throw PreconditionError("no closed-form velocity for profile " + std::string(named_profile(tag).name));
  }
}

VectorField named_velocity(const Grid& grid, Profile tag) {
  require(named_profile(tag).has_closed_form_velocity,
          "no closed-form velocity for profile " + std::string(named_profile(tag).name));
  VectorField v(grid);
  const int n = grid.n();
  for (int i1 = 0; i1 < n; ++i1) {
    for (int i2 = 0; i2 < n; ++i2) {
      const auto u = profile_velocity(tag, grid.coord(i1), grid.coord(i2));
      v.v1(i1, i2) = u[0];
      v.v2(i1, i2) = u[1];
    }
  }
  return v;
}

VectorField velocity_from_vorticity(const RealField& w) {
  const Grid& g = w.grid();
  const int n = g.n();
  const int nc = g.spectral_cols();
  auto plan = detail::FftPlan::get(n);
  std::vector<std::complex<double>> wh(g.spectral_size());
  std::vector<std::complex<double>> a(g.spectral_size()), b(g.spectral_size());
  plan->forward(w.values(), wh);
  const double norm = 1.0 / (static_cast<double>(n) * n);
  for (int k1 = 0; k1 < n; ++k1) {
    const double p1 = (k1 == n / 2) ? 0.0 : g.wavenumber(k1);
    for (int k2 = 0; k2 < nc; ++k2) {
      const double p2 = (k2 == n / 2) ? 0.0 : g.wavenumber(k2);
      const double p2sum = p1 * p1 + p2 * p2;
      const std::size_t i = k1 * nc + k2;
      if (p2sum == 0.0) {
        a[i] = b[i] = 0.0;
        continue;
      }
      // rot v = w: v_hat = (i p2, -i p1) w_hat / |p|^2
      const std::complex<double> c = wh[i] * (norm / p2sum);
      a[i] = std::complex<double>(0.0, p2) * c;
      b[i] = std::complex<double>(0.0, -p1) * c;
    }
  }
  VectorField v(g);
  plan->inverse_destroy(a, v.v1.values());
  plan->inverse_destroy(b, v.v2.values());
  return v;
}

std::shared_ptr<const GaussianFamily> gaussian_family(const Grid& grid) {
  static std::mutex mutex;
  static std::map<std::pair<int, double>, std::shared_ptr<const GaussianFamily>> cache;
  std::lock_guard lock(mutex);
  const auto key = std::make_pair(grid.n(), grid.half_width());
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  auto family = std::make_shared<GaussianFamily>();
  for (Profile p : {Profile::G, Profile::F1, Profile::F2, Profile::H1, Profile::H2, Profile::H3}) {
    family->vorticity.push_back(sample_profile(grid, p));
    family->velocity.push_back(named_velocity(grid, p));
  }
  cache.emplace(key, family);
  return family;
}

RealField family_remainder(const RealField& w, const MomentSet& m) {
  const auto family = gaussian_family(w.grid());
  const auto c = m.as_array();
  RealField r = w;
  for (int k = 0; k < 6; ++k) r.add_scaled(-c[k], family->vorticity[k]);
  return r;
}

VectorField hybrid_velocity(const RealField& w) {
  const MomentSet m = extract_moments(w);
  const auto family = gaussian_family(w.grid());
  VectorField v = velocity_from_vorticity(family_remainder(w, m));
  const auto c = m.as_array();
  for (int k = 0; k < 6; ++k) v.add_scaled(c[k], family->velocity[k]);
  return v;
}

RealField curl(const VectorField& v) {
  return spectral_derivative(v.v2, 0) - spectral_derivative(v.v1, 1);
}

RealField divergence(const VectorField& v) {
  return spectral_derivative(v.v1, 0) + spectral_derivative(v.v2, 1);
}

HlsReport check_hls_bounds(const RealField& w, const std::vector<std::pair<double, double>>& pairs) {
  for (const auto& [p, q] : pairs) {
    require(p > 1.0 && p < 2.0 && q > 2.0 && std::isfinite(q) && std::abs(1.0 / q - (1.0 / p - 0.5)) < 1e-12,
            "exponent pair must satisfy 1 < p < 2 < q < inf and 1/q = 1/p - 1/2");
  }
  HlsReport report{};
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (w.max_abs() == 0.0) {
    report.degenerate = true;
    report.gradient_ratio = nan;
    report.gradient_flag = false;
    for (const auto& [p, q] : pairs) report.entries.push_back({p, q, nan, nan});
    return report;
  }
  const VectorField v = hybrid_velocity(w);
  const double v_inf = lp_norm(v, kInfinity);
  for (const auto& [p, q] : pairs) {
    const double a = 1.0 - 2.0 / q;
    const double wp = lp_norm(w, p);
    const double wq = lp_norm(w, q);
    report.entries.push_back({p, q, lp_norm(v, q) / wp, v_inf / (std::pow(wp, a) * std::pow(wq, 1.0 - a))});
  }

  // Gradient identity on the periodic representation of w.
  const VectorField vs = velocity_from_vorticity(w);
  double grad2 = 0.0;
  for (const RealField* c : {&vs.v1, &vs.v2}) {
    for (int axis = 0; axis < 2; ++axis) {
      const double d = lp_norm(spectral_derivative(*c, axis), 2.0);
      grad2 += d * d;
    }
  }
  RealField centred = w;
  const double mean = integrate(w) / (4.0 * w.grid().half_width() * w.grid().half_width());
  for (double& x : centred.values()) x -= mean;
  report.gradient_ratio = std::sqrt(grad2) / lp_norm(centred, 2.0);
  report.gradient_flag = std::abs(report.gradient_ratio - 1.0) > 1e-8;
  report.degenerate = false;
  return report;
}

double far_field_exponent(const VectorField& v, double r1, double r2) {
  const Grid& g = v.grid();
  require(r1 > 0.0 && r2 > r1, "radius window must satisfy 0 < r1 < r2");
  require(r2 <= 0.8 * g.half_width() + 1e-12, "outer radius must not exceed 0.8 of the half width");
  constexpr int kBins = 24;
  std::vector<double> sum(kBins, 0.0);
  std::vector<int> count(kBins, 0);
  const double lr1 = std::log(r1), lr2 = std::log(r2);
  const int n = g.n();
  for (int i1 = 0; i1 < n; ++i1) {
    for (int i2 = 0; i2 < n; ++i2) {
      const double r = std::hypot(g.coord(i1), g.coord(i2));
      if (r < r1 || r >= r2) continue;
      const int b = std::min(kBins - 1, static_cast<int>((std::log(r) - lr1) / (lr2 - lr1) * kBins));
      sum[b] += std::hypot(v.v1(i1, i2), v.v2(i1, i2));
      ++count[b];
    }
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (int b = 0; b < kBins; ++b) {
    if (count[b] == 0 || sum[b] <= 0.0) continue;
    const double x = lr1 + (b + 0.5) * (lr2 - lr1) / kBins;
    const double y = std::log(sum[b] / count[b]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  require(m >= 2, "radius window contains too few grid points");
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace ns2d
