#include "ns2d/field.hpp"

#include <cmath>

#include "ns2d/error.hpp"

namespace ns2d {

RealField::RealField(const Grid& grid) : grid_(grid), values_(grid.size(), 0.0) {}

RealField::RealField(const Grid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  require(values_.size() == grid_.size(), "field value count does not match the grid");
}

bool RealField::all_finite() const {
  for (double v : values_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

double RealField::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

RealField& RealField::operator+=(const RealField& other) { return add_scaled(1.0, other); }

RealField& RealField::operator-=(const RealField& other) { return add_scaled(-1.0, other); }

RealField& RealField::operator*=(double c) {
  for (double& v : values_) v *= c;
  return *this;
}

RealField& RealField::add_scaled(double c, const RealField& other) {
  require(grid_ == other.grid_, "fields live on different grids");
  const auto src = other.values();
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += c * src[i];
  return *this;
}

RealField operator+(RealField a, const RealField& b) { return a += b; }
RealField operator-(RealField a, const RealField& b) { return a -= b; }
RealField operator*(double c, RealField a) { return a *= c; }

VectorField::VectorField(RealField a, RealField b) : v1(std::move(a)), v2(std::move(b)) {
  require(v1.grid() == v2.grid(), "vector components live on different grids");
}

VectorField& VectorField::add_scaled(double c, const VectorField& other) {
  v1.add_scaled(c, other.v1);
  v2.add_scaled(c, other.v2);
  return *this;
}

SpectralField::SpectralField(const Grid& grid) : grid_(grid), coeffs_(grid.spectral_size()) {}

SpectralField::SpectralField(const Grid& grid, std::vector<std::complex<double>> coeffs)
    : grid_(grid), coeffs_(std::move(coeffs)) {
  require(coeffs_.size() == grid_.spectral_size(), "spectral coefficient count does not match the grid");
}

}  // namespace ns2d
