#include "ns2d/decay_fit.hpp"

#include <cmath>
#include <vector>

#include "ns2d/error.hpp"

namespace ns2d {

DecayFit fit_decay(std::span<const double> times, std::span<const double> values, double tau_lo, double tau_hi) {
  require(times.size() == values.size(), "times and values differ in length");
  require(tau_lo < tau_hi, "decay-fit window must be non-empty");
  std::vector<double> x, y;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < tau_lo - 1e-12 || times[i] > tau_hi + 1e-12) continue;
    require(values[i] > 0.0 && std::isfinite(values[i]), "decay fit needs positive finite values");
    x.push_back(times[i]);
    y.push_back(std::log(values[i]));
  }
  require(x.size() >= 2, "decay-fit window contains fewer than two samples");
  const double m = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  require(sxx > 0.0, "decay-fit window has no time spread");
  DecayFit fit;
  fit.tau_lo = tau_lo;
  fit.tau_hi = tau_hi;
  fit.rate = sxy / sxx;
  const double intercept = my - fit.rate * mx;
  fit.amplitude = std::exp(intercept);
  for (std::size_t i = 0; i < x.size(); ++i) {
    fit.residual = std::max(fit.residual, std::abs(y[i] - intercept - fit.rate * x[i]));
  }
  fit.samples = static_cast<int>(x.size());
  return fit;
}

}  // namespace ns2d
