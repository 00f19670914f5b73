/// @file grid.hpp
/// @brief Uniform periodic grid on the square [-L, L)^2 in self-similar variables.
#pragma once

#include <cstddef>

namespace ns2d {

class Grid {
 public:
  static constexpr double kDefaultHalfWidth = 12.0;
  static constexpr int kDefaultPoints = 256;

  /// Throws PreconditionError unless n is even, n >= 16 and half_width > 0.
  Grid(int n = kDefaultPoints, double half_width = kDefaultHalfWidth);

  int n() const { return n_; }
  double half_width() const { return half_width_; }
  double spacing() const { return spacing_; }
  double cell_area() const { return spacing_ * spacing_; }
  std::size_t size() const { return static_cast<std::size_t>(n_) * n_; }

  /// Node coordinate -L + i h.
  double coord(int i) const { return -half_width_ + i * spacing_; }

  /// Number of stored columns in a half spectrum (n/2 + 1).
  int spectral_cols() const { return n_ / 2 + 1; }
  std::size_t spectral_size() const { return static_cast<std::size_t>(n_) * spectral_cols(); }

  /// FFT index k in [0, n) mapped to the signed mode number in [-n/2, n/2).
  int signed_mode(int k) const { return k < n_ / 2 ? k : k - n_; }

  /// Angular wavenumber pi k / L for FFT index k.
  double wavenumber(int k) const;

  /// Largest wavenumber magnitude pi n / (2 L).
  double max_wavenumber() const;

  bool operator==(const Grid& other) const {
    return n_ == other.n_ && half_width_ == other.half_width_;
  }
  bool operator!=(const Grid& other) const { return !(*this == other); }

 private:
  int n_;
  double half_width_;
  double spacing_;
};

}  // namespace ns2d
