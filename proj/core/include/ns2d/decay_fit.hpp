/// @file decay_fit.hpp
/// @brief Least-squares exponential rate fits over a time window.
#pragma once

#include <span>

namespace ns2d {

struct DecayFit {
  double tau_lo = 0.0;
  double tau_hi = 0.0;
  double rate = 0.0;       ///< fitted exponent r in A e^{r tau}
  double amplitude = 0.0;  ///< A
  double residual = 0.0;   ///< max |log value - log fit| over the window
  int samples = 0;
};

/// Fits log(values) against times over samples with tau_lo <= t <= tau_hi.
/// Throws PreconditionError if fewer than two positive samples fall in the window.
DecayFit fit_decay(std::span<const double> times, std::span<const double> values, double tau_lo, double tau_hi);

}  // namespace ns2d
