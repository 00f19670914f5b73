#include "ns2d/moments.hpp"

namespace ns2d {

MomentSet extract_moments(const RealField& w) {
  const Grid& g = w.grid();
  const int n = g.n();
  double a = 0.0, b1 = 0.0, b2 = 0.0, c1 = 0.0, c2 = 0.0, c3 = 0.0;
  for (int i1 = 0; i1 < n; ++i1) {
    const double x1 = g.coord(i1);
    for (int i2 = 0; i2 < n; ++i2) {
      const double x2 = g.coord(i2);
      const double v = w(i1, i2);
      a += v;
      b1 += x1 * v;
      b2 += x2 * v;
      c1 += (x1 * x1 + x2 * x2) * v;
      c2 += (x1 * x1 - x2 * x2) * v;
      c3 += x1 * x2 * v;
    }
  }
  const double h2 = g.cell_area();
  MomentSet m;
  m.alpha = a * h2;
  m.beta = {-b1 * h2, -b2 * h2};
  m.gamma = {0.25 * (c1 - 4.0 * a) * h2, 0.25 * c2 * h2, c3 * h2};
  return m;
}

}  // namespace ns2d
