/// @file spectral_operator.hpp
/// @brief The linearised operator Lw = Lap w + (xi.grad w)/2 + w, its Hermite
/// projections and its exact semigroup.
#pragma once

#include <cstdint>
#include <vector>

#include "ns2d/decay_fit.hpp"
#include "ns2d/field.hpp"
#include "ns2d/hermite.hpp"

namespace ns2d {

/// P_n keeps Hermite modes of order <= n (eigenvalues 0, -1/2, ..., -n/2)
/// inside the weighted space of exponent m. Requires n + 1 < m and m <= 6.
struct ProjectionSpec {
  int n;
  double m;
  ProjectionSpec(int order, double weight);
};

enum class ProjectionPart { P, Q };

/// Emits warning "boundary_truncation" if |xi.grad w| on the box edge exceeds 1e-8 of its max.
RealField apply_L(const RealField& w);

/// Coefficients int H_alpha w for all |alpha| <= n, ordered by increasing order then a2.
std::vector<std::pair<HermiteIndex, double>> hermite_coefficients(const RealField& w, int n);

RealField project(const RealField& w, const ProjectionSpec& spec, ProjectionPart part);

/// Exact e^{tau L}: w_hat(p) -> e^{-(1 - e^{-tau})|p|^2} w_hat(p e^{-tau/2}).
/// The dilated spectrum is evaluated by direct discrete-time Fourier sums.
RealField semigroup_apply(const RealField& w, double tau);

struct SgestimRow {
  double m;
  int n;
  double tau;
  double norm;
  int member;
};

struct SgestimResult {
  DecayFit worst;              ///< the fit with the largest (least negative) rate
  std::vector<DecayFit> fits;  ///< one per corpus member
  std::vector<SgestimRow> rows;
  double bound;                ///< -(n+1)/2 + 0.05
  bool pass;
};

/// Fits decay of ||S(tau) Q_n f||_m over tau_grid for a seeded corpus of
/// Gaussian-enveloped random polynomials.
SgestimResult verify_sgestim(const Grid& grid, double m, int n, const std::vector<double>& tau_grid,
                             int corpus_size = 8, std::uint64_t seed = 1);

}  // namespace ns2d
