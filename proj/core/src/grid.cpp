#include "ns2d/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ns2d/error.hpp"

namespace ns2d {

Grid::Grid(int n, double half_width) : n_(n), half_width_(half_width), spacing_(0.0) {
  require(n >= 16 && n % 2 == 0, "grid size must be even and at least 16, got " + std::to_string(n));
  require(std::isfinite(half_width) && half_width > 0.0, "grid half width must be positive");
  spacing_ = 2.0 * half_width / n;
}

double Grid::wavenumber(int k) const { return std::numbers::pi * signed_mode(k) / half_width_; }

double Grid::max_wavenumber() const { return std::numbers::pi * (n_ / 2) / half_width_; }

}  // namespace ns2d
