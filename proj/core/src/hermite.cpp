#include "ns2d/hermite.hpp"

#include <cmath>
#include <numbers>

#include "ns2d/error.hpp"

namespace ns2d {

namespace {

constexpr std::array<std::array<double, 7>, 7> kGaussianDerivatives = {{
    {1.0, 0, 0, 0, 0, 0, 0},
    {0, -1.0 / 2, 0, 0, 0, 0, 0},
    {-1.0 / 2, 0, 1.0 / 4, 0, 0, 0, 0},
    {0, 3.0 / 4, 0, -1.0 / 8, 0, 0, 0},
    {3.0 / 4, 0, -3.0 / 4, 0, 1.0 / 16, 0, 0},
    {0, -15.0 / 8, 0, 5.0 / 8, 0, -1.0 / 32, 0},
    {-15.0 / 8, 0, 45.0 / 16, 0, -15.0 / 32, 0, 1.0 / 64},
}};

double horner(const std::array<double, 7>& c, double x) {
  double r = 0.0;
  for (int i = 6; i >= 0; --i) r = r * x + c[i];
  return r;
}

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

HermiteIndex::HermiteIndex(int first, int second) : a1(first), a2(second) {
  require(first >= 0 && second >= 0, "Hermite index components must be non-negative");
  require(first + second <= kMaxOrder, "Hermite order above 6 is not supported");
}

const std::array<double, 7>& gaussian_derivative_coefficients(int k) {
  require(k >= 0 && k <= HermiteIndex::kMaxOrder, "derivative order out of range");
  return kGaussianDerivatives[k];
}

double Polynomial2D::operator()(double x1, double x2) const {
  double r = 0.0;
  for (int i = 6; i >= 0; --i) r = r * x1 + horner(c[i], x2);
  return r;
}

double hermite_function_value(HermiteIndex alpha, double x1, double x2) {
  return horner(kGaussianDerivatives[alpha.a1], x1) * horner(kGaussianDerivatives[alpha.a2], x2) *
         std::exp(-0.25 * (x1 * x1 + x2 * x2)) / (4.0 * std::numbers::pi);
}

RealField hermite_function(const Grid& grid, HermiteIndex alpha) {
  return RealField::sample(grid, [alpha](double x1, double x2) { return hermite_function_value(alpha, x1, x2); });
}

Polynomial2D hermite_polynomial(HermiteIndex alpha) {
  const double s1 = std::ldexp(1.0, alpha.a1) / factorial(alpha.a1);
  const double s2 = std::ldexp(1.0, alpha.a2) / factorial(alpha.a2);
  Polynomial2D p;
  for (int i = 0; i < 7; ++i) {
    for (int j = 0; j < 7; ++j) {
      p.c[i][j] = s1 * kGaussianDerivatives[alpha.a1][i] * s2 * kGaussianDerivatives[alpha.a2][j];
    }
  }
  return p;
}

}  // namespace ns2d
