#include "ns2d/spectral_operator.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <string>

#include "fft_plan.hpp"
#include "ns2d/error.hpp"
#include "ns2d/fields.hpp"

namespace ns2d {

ProjectionSpec::ProjectionSpec(int order, double weight) : n(order), m(weight) {
  require(order >= 0 && order <= HermiteIndex::kMaxOrder, "projection order must lie in [0, 6]");
  require(weight <= WeightSpec::kMaxExponent, "weight exponent above 6 is not supported");
  require(order + 1 < weight, "projection order n and weight m must satisfy n + 1 < m");
}

RealField apply_L(const RealField& w) {
  const Grid& g = w.grid();
  const int n = g.n();
  const int nc = g.spectral_cols();
  auto plan = detail::FftPlan::get(n);
  std::vector<std::complex<double>> wh(g.spectral_size()), d1(g.spectral_size()), d2(g.spectral_size());
  plan->forward(w.values(), wh);
  const double norm = 1.0 / (static_cast<double>(n) * n);
  for (int k1 = 0; k1 < n; ++k1) {
    const double p1 = g.wavenumber(k1);
    const double p1d = (k1 == n / 2) ? 0.0 : p1;
    for (int k2 = 0; k2 < nc; ++k2) {
      const double p2 = g.wavenumber(k2);
      const double p2d = (k2 == n / 2) ? 0.0 : p2;
      const std::size_t i = k1 * nc + k2;
      const std::complex<double> c = wh[i] * norm;
      d1[i] = std::complex<double>(0.0, p1d) * c;
      d2[i] = std::complex<double>(0.0, p2d) * c;
      wh[i] = -(p1 * p1 + p2 * p2) * c;
    }
  }
  RealField lap(g), g1(g), g2(g);
  plan->inverse_destroy(wh, lap.values());
  plan->inverse_destroy(d1, g1.values());
  plan->inverse_destroy(d2, g2.values());

  RealField out(g);
  double peak = 0.0, edge = 0.0;
  for (int i1 = 0; i1 < n; ++i1) {
    const double x1 = g.coord(i1);
    for (int i2 = 0; i2 < n; ++i2) {
      const double x2 = g.coord(i2);
      const double adv = x1 * g1(i1, i2) + x2 * g2(i1, i2);
      peak = std::max(peak, std::abs(adv));
      if (i1 == 0 || i2 == 0 || i1 == n - 1 || i2 == n - 1) edge = std::max(edge, std::abs(adv));
      out(i1, i2) = lap(i1, i2) + 0.5 * adv + w(i1, i2);
    }
  }
  if (peak > 0.0 && edge > 1e-8 * peak) {
    warn("boundary_truncation", "xi.grad w at the box edge is " + std::to_string(edge / peak) + " of its peak");
  }
  return out;
}

std::vector<std::pair<HermiteIndex, double>> hermite_coefficients(const RealField& w, int n) {
  require(n >= 0 && n <= HermiteIndex::kMaxOrder, "projection order must lie in [0, 6]");
  const Grid& g = w.grid();
  std::vector<std::pair<HermiteIndex, double>> out;
  for (int k = 0; k <= n; ++k) {
    for (int a2 = 0; a2 <= k; ++a2) {
      const HermiteIndex alpha(k - a2, a2);
      const Polynomial2D h = hermite_polynomial(alpha);
      double sum = 0.0;
      for (int i1 = 0; i1 < g.n(); ++i1) {
        for (int i2 = 0; i2 < g.n(); ++i2) sum += h(g.coord(i1), g.coord(i2)) * w(i1, i2);
      }
      out.emplace_back(alpha, sum * g.cell_area());
    }
  }
  return out;
}

RealField project(const RealField& w, const ProjectionSpec& spec, ProjectionPart part) {
  const Grid& g = w.grid();
  RealField pw(g);
  for (const auto& [alpha, c] : hermite_coefficients(w, spec.n)) pw.add_scaled(c, hermite_function(g, alpha));
  if (part == ProjectionPart::P) return pw;
  return w - pw;
}

RealField semigroup_apply(const RealField& w, double tau) {
  require(std::isfinite(tau) && tau >= 0.0, "semigroup time must be non-negative");
  if (tau == 0.0) return w;
  const Grid& g = w.grid();
  const int n = g.n();
  const int nc = g.spectral_cols();
  const double h = g.spacing();
  const double shrink = std::exp(-0.5 * tau);
  const double a = -std::expm1(-tau);

  // Dilated-wavenumber DTFT: W(q) = h^2 sum_j w_j e^{-i q.xi_j}, q = p e^{-tau/2}.
  using CMatrix = Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  using RMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  CMatrix e1(n, n), e2(nc, n);
  for (int k = 0; k < n; ++k) {
    const double q = (k == n / 2) ? 0.0 : g.wavenumber(k) * shrink;
    for (int j = 0; j < n; ++j) {
      const std::complex<double> e = std::polar(h, -q * g.coord(j));
      e1(k, j) = e;
      if (k < nc) e2(k, j) = e;
    }
  }
  // column k2 = n/2 is the Nyquist column and gets dropped below
  const Eigen::Map<const RMatrix> f(w.values().data(), n, n);
  const CMatrix inner = f.cast<std::complex<double>>() * e2.transpose();
  const CMatrix spec = e1 * inner;

  SpectralField out(g);
  for (int k1 = 0; k1 < n; ++k1) {
    const double p1 = g.wavenumber(k1);
    for (int k2 = 0; k2 < nc; ++k2) {
      if (k1 == n / 2 || k2 == n / 2) {
        out(k1, k2) = 0.0;
        continue;
      }
      const double p2 = g.wavenumber(k2);
      out(k1, k2) = std::exp(-a * (p1 * p1 + p2 * p2)) * spec(k1, k2);
    }
  }
  return inverse_transform(out);
}

SgestimResult verify_sgestim(const Grid& grid, double m, int n, const std::vector<double>& tau_grid,
                             int corpus_size, std::uint64_t seed) {
  const ProjectionSpec spec(n, m);
  const WeightSpec weight(m);
  require(tau_grid.size() >= 2, "tau grid needs at least two points");
  require(corpus_size >= 1, "corpus must contain at least one field");
  for (std::size_t i = 0; i < tau_grid.size(); ++i) {
    require(tau_grid[i] >= 0.0 && (i == 0 || tau_grid[i] > tau_grid[i - 1]), "tau grid must be increasing and >= 0");
  }
  SgestimResult result{};
  result.bound = -0.5 * (n + 1) + 0.05;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_real_distribution<double> centre(-0.5, 0.5);
  std::uniform_real_distribution<double> width(0.6, 1.0);
  for (int member = 0; member < corpus_size; ++member) {
    std::array<std::array<double, 5>, 5> c{};
    for (auto& row : c) {
      for (auto& v : row) v = coef(rng);
    }
    const double c1 = centre(rng), c2 = centre(rng), s2 = width(rng);
    RealField f = RealField::sample(grid, [&](double x1, double x2) {
      const double y1 = x1 - c1, y2 = x2 - c2;
      double poly = 0.0;
      double p1 = 1.0;
      for (int i = 0; i < 5; ++i, p1 *= y1) {
        double p2 = 1.0;
        for (int j = 0; i + j < 5; ++j, p2 *= y2) poly += c[i][j] * p1 * p2;
      }
      return poly * std::exp(-(y1 * y1 + y2 * y2) / (4.0 * s2));
    });
    const RealField qf = project(f, spec, ProjectionPart::Q);
    std::vector<double> norms;
    for (double tau : tau_grid) {
      const double v = weighted_norm(semigroup_apply(qf, tau), weight);
      norms.push_back(v);
      result.rows.push_back({m, n, tau, v, member});
    }
    if (norms.front() <= 1e-12 * weighted_norm(f, weight)) continue;
    const DecayFit fit = fit_decay(tau_grid, norms, tau_grid.front(), tau_grid.back());
    if (result.fits.empty() || fit.rate > result.worst.rate) result.worst = fit;
    result.fits.push_back(fit);
  }
  require(!result.fits.empty(), "every corpus member lies in the retained Hermite span");
  result.pass = result.worst.rate <= result.bound;
  return result;
}

}  // namespace ns2d
