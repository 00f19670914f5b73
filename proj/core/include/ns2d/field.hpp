/// @file field.hpp
/// @brief Grid-sampled scalar, vector and spectral fields.
#pragma once

#include <complex>
#include <span>
#include <vector>

#include "ns2d/grid.hpp"

namespace ns2d {

/// Scalar field stored row-major: index i1 * n + i2, i1 along the first coordinate.
class RealField {
 public:
  explicit RealField(const Grid& grid);
  RealField(const Grid& grid, std::vector<double> values);

  /// Samples f(xi1, xi2) at every node.
  template <class F>
  static RealField sample(const Grid& grid, F&& f) {
    RealField out(grid);
    const int n = grid.n();
    for (int i1 = 0; i1 < n; ++i1) {
      const double x1 = grid.coord(i1);
      for (int i2 = 0; i2 < n; ++i2) out.values_[i1 * n + i2] = f(x1, grid.coord(i2));
    }
    return out;
  }

  const Grid& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  double operator()(int i1, int i2) const { return values_[i1 * grid_.n() + i2]; }
  double& operator()(int i1, int i2) { return values_[i1 * grid_.n() + i2]; }

  bool all_finite() const;
  double max_abs() const;

  RealField& operator+=(const RealField& other);
  RealField& operator-=(const RealField& other);
  RealField& operator*=(double c);
  /// this += c * other
  RealField& add_scaled(double c, const RealField& other);

 private:
  Grid grid_;
  std::vector<double> values_;
};

RealField operator+(RealField a, const RealField& b);
RealField operator-(RealField a, const RealField& b);
RealField operator*(double c, RealField a);

struct VectorField {
  RealField v1;
  RealField v2;

  explicit VectorField(const Grid& grid) : v1(grid), v2(grid) {}
  VectorField(RealField a, RealField b);
  const Grid& grid() const { return v1.grid(); }
  VectorField& add_scaled(double c, const VectorField& other);
};

/// Half spectrum of a real field in the continuous convention
/// w_hat(p) = integral of w(xi) exp(-i p.xi), sampled at p = pi k / L.
/// Row index k1 in [0, n) (FFT order), column k2 in [0, n/2].
class SpectralField {
 public:
  explicit SpectralField(const Grid& grid);
  SpectralField(const Grid& grid, std::vector<std::complex<double>> coeffs);

  const Grid& grid() const { return grid_; }
  std::span<const std::complex<double>> coeffs() const { return coeffs_; }
  std::span<std::complex<double>> coeffs() { return coeffs_; }
  std::complex<double> operator()(int k1, int k2) const {
    return coeffs_[k1 * grid_.spectral_cols() + k2];
  }
  std::complex<double>& operator()(int k1, int k2) { return coeffs_[k1 * grid_.spectral_cols() + k2]; }

 private:
  Grid grid_;
  std::vector<std::complex<double>> coeffs_;
};

}  // namespace ns2d
