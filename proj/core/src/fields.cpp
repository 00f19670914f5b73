#include "ns2d/fields.hpp"

#include <cmath>
#include <string>

#include "fft_plan.hpp"
#include "ns2d/error.hpp"

namespace ns2d {

WeightSpec::WeightSpec(double exponent) : m(exponent) {
  require(std::isfinite(exponent) && exponent >= 0.0 && exponent <= kMaxExponent,
          "weight exponent must lie in [0, 6], got " + std::to_string(exponent));
}

double WeightSpec::operator()(double x1, double x2) const {
  return std::pow(1.0 + x1 * x1 + x2 * x2, 0.5 * m);
}

SpectralField forward_transform(const RealField& w) {
  const Grid& g = w.grid();
  SpectralField out(g);
  detail::FftPlan::get(g.n())->forward(w.values(), out.coeffs());
  const int n = g.n();
  const int nc = g.spectral_cols();
  const double area = g.cell_area();
  auto c = out.coeffs();
  for (int k1 = 0; k1 < n; ++k1) {
    for (int k2 = 0; k2 < nc; ++k2) {
      const double s = ((k1 + k2) % 2 == 0) ? area : -area;
      c[k1 * nc + k2] *= s;
    }
  }
  return out;
}

RealField inverse_transform(const SpectralField& w_hat) {
  const Grid& g = w_hat.grid();
  const int n = g.n();
  const int nc = g.spectral_cols();
  const double scale = 1.0 / (4.0 * g.half_width() * g.half_width());
  std::vector<std::complex<double>> c(w_hat.coeffs().begin(), w_hat.coeffs().end());
  for (int k1 = 0; k1 < n; ++k1) {
    for (int k2 = 0; k2 < nc; ++k2) {
      const double s = ((k1 + k2) % 2 == 0) ? scale : -scale;
      c[k1 * nc + k2] *= s;
    }
  }
  RealField out(g);
  detail::FftPlan::get(n)->inverse_destroy(c, out.values());
  return out;
}

double integrate(const RealField& w) {
  double sum = 0.0;
  for (double v : w.values()) sum += v;
  return sum * w.grid().cell_area();
}

double lp_norm(const RealField& w, double p) {
  require(p >= 1.0, "Lebesgue exponent must be at least 1");
  if (std::isinf(p)) return w.max_abs();
  double sum = 0.0;
  if (p == 2.0) {
    for (double v : w.values()) sum += v * v;
    return std::sqrt(sum * w.grid().cell_area());
  }
  for (double v : w.values()) sum += std::pow(std::abs(v), p);
  return std::pow(sum * w.grid().cell_area(), 1.0 / p);
}

double lp_norm(const VectorField& v, double p) {
  require(p >= 1.0, "Lebesgue exponent must be at least 1");
  const auto a = v.v1.values();
  const auto b = v.v2.values();
  double sum = 0.0;
  if (std::isinf(p)) {
    for (std::size_t i = 0; i < a.size(); ++i) sum = std::max(sum, std::hypot(a[i], b[i]));
    return sum;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double m2 = a[i] * a[i] + b[i] * b[i];
    sum += (p == 2.0) ? m2 : std::pow(m2, 0.5 * p);
  }
  return std::pow(sum * v.grid().cell_area(), 1.0 / p);
}

double weighted_norm(const RealField& w, WeightSpec weight) {
  const Grid& g = w.grid();
  const int n = g.n();
  double sum = 0.0;
  double peak = 0.0;
  double edge = 0.0;
  for (int i1 = 0; i1 < n; ++i1) {
    const double x1 = g.coord(i1);
    for (int i2 = 0; i2 < n; ++i2) {
      const double x2 = g.coord(i2);
      const double v = w(i1, i2);
      const double d = std::pow(1.0 + x1 * x1 + x2 * x2, weight.m) * v * v;
      sum += d;
      peak = std::max(peak, d);
      if (i1 == 0 || i2 == 0 || i1 == n - 1 || i2 == n - 1) edge = std::max(edge, d);
    }
  }
  if (peak > 0.0 && edge > 1e-10 * peak) {
    warn("weight_truncation", "weighted density at the box edge is " + std::to_string(edge / peak) +
                                  " of its peak; the weighted norm is truncated");
  }
  return std::sqrt(sum * g.cell_area());
}

RealField spectral_derivative(const RealField& w, int axis) {
  require(axis == 0 || axis == 1, "derivative axis must be 0 or 1");
  const Grid& g = w.grid();
  const int n = g.n();
  const int nc = g.spectral_cols();
  std::vector<std::complex<double>> c(g.spectral_size());
  auto plan = detail::FftPlan::get(n);
  plan->forward(w.values(), c);
  const double norm = 1.0 / (static_cast<double>(n) * n);
  for (int k1 = 0; k1 < n; ++k1) {
    for (int k2 = 0; k2 < nc; ++k2) {
      const int k = axis == 0 ? k1 : k2;
      const double p = (k == n / 2) ? 0.0 : g.wavenumber(k);
      c[k1 * nc + k2] *= std::complex<double>(0.0, p * norm);
    }
  }
  RealField out(g);
  plan->inverse_destroy(c, out.values());
  return out;
}

SpectralField dealias(const SpectralField& w_hat) {
  const Grid& g = w_hat.grid();
  const int n = g.n();
  const int nc = g.spectral_cols();
  const int cut = n / 3;
  SpectralField out = w_hat;
  auto c = out.coeffs();
  for (int k1 = 0; k1 < n; ++k1) {
    const bool row_cut = std::abs(g.signed_mode(k1)) > cut;
    for (int k2 = 0; k2 < nc; ++k2) {
      if (row_cut || k2 > cut) c[k1 * nc + k2] = 0.0;
    }
  }
  return out;
}

}  // namespace ns2d
