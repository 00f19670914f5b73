#include "ns2d/profiles.hpp"

#include <cmath>
#include <string>

#include "ns2d/error.hpp"

namespace ns2d {

namespace {

constexpr double kPi = std::numbers::pi;

double g_fn(double x1, double x2) { return oseen_vortex(x1, x2); }
double f1_fn(double x1, double x2) { return -0.5 * x1 * oseen_vortex(x1, x2); }
double f2_fn(double x1, double x2) { return -0.5 * x2 * oseen_vortex(x1, x2); }
double h1_fn(double x1, double x2) { return 0.25 * (x1 * x1 + x2 * x2 - 4.0) * oseen_vortex(x1, x2); }
double h2_fn(double x1, double x2) { return 0.25 * (x1 * x1 - x2 * x2) * oseen_vortex(x1, x2); }
double h3_fn(double x1, double x2) { return 0.25 * x1 * x2 * oseen_vortex(x1, x2); }
double k_fn(double x1, double x2) {
  return x1 * (1.0 - (x1 * x1 + x2 * x2) / 8.0) * oseen_vortex(x1, x2);
}
double phi_fn(double x1, double x2) { return interaction_density(x1 * x1 + x2 * x2); }
double psi2_fn(double x1, double x2) { return (x1 * x1 - x2 * x2) * phi_fn(x1, x2) - kKappa * h2_fn(x1, x2); }
double psi3_fn(double x1, double x2) { return x1 * x2 * phi_fn(x1, x2) - kKappa * h3_fn(x1, x2); }

constexpr std::array<NamedProfile, 10> kTable = {{
    {Profile::G, "G", g_fn, true},
    {Profile::F1, "F1", f1_fn, true},
    {Profile::F2, "F2", f2_fn, true},
    {Profile::H1, "H1", h1_fn, true},
    {Profile::H2, "H2", h2_fn, true},
    {Profile::H3, "H3", h3_fn, true},
    {Profile::K, "K", k_fn, true},
    {Profile::Phi, "Phi", phi_fn, false},
    {Profile::Psi2, "Psi2", psi2_fn, false},
    {Profile::Psi3, "Psi3", psi3_fn, false},
}};

}  // namespace

double oseen_vortex(double x1, double x2) { return std::exp(-0.25 * (x1 * x1 + x2 * x2)) / (4.0 * kPi); }

double interaction_density(double s) {
  const double u = 0.25 * s;
  if (u < 0.5) {
    // (e^{-u} - 1 + u) / u^2 by its alternating series
    double term = 0.5;
    double sum = 0.0;
    for (int k = 2; k < 30; ++k) {
      sum += term;
      term *= -u / (k + 1);
    }
    return std::exp(-u) * sum / (128.0 * kPi * kPi);
  }
  const double e = std::exp(-u);
  return e * (e - 1.0 + u) / (8.0 * kPi * kPi * s * s);
}

const NamedProfile& named_profile(Profile tag) { return kTable[static_cast<std::size_t>(tag)]; }

std::optional<Profile> parse_profile(std::string_view name) {
  for (const auto& p : kTable) {
    if (p.name == name) return p.tag;
  }
  return std::nullopt;
}

RealField sample_profile(const Grid& grid, Profile tag) {
  return RealField::sample(grid, named_profile(tag).evaluate);
}

}  // namespace ns2d
