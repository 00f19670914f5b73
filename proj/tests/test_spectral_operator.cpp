/// @file test_spectral_operator.cpp
/// @brief Hermite eigenstructure, projections and the exact semigroup.

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "ns2d/error.hpp"
#include "ns2d/fields.hpp"
#include "ns2d/hermite.hpp"
#include "ns2d/moments.hpp"
#include "ns2d/profiles.hpp"
#include "ns2d/spectral_operator.hpp"

using namespace ns2d;

namespace {

constexpr double kPi = std::numbers::pi;

double gauss(double x1, double x2) { return std::exp(-(x1 * x1 + x2 * x2) / 4.0) / (4.0 * kPi); }

const Grid& default_grid() {
  static const Grid g;
  return g;
}

double l2_diff(const RealField& a, const RealField& b) { return lp_norm(a - b, 2.0); }

RealField smooth_field(const Grid& g) {
  return RealField::sample(g, [](double x, double y) {
    return (0.4 + 0.3 * x - 0.2 * y * y + 0.1 * x * y * y) * std::exp(-((x - 0.4) * (x - 0.4) + y * y) / 3.2);
  });
}

}  // namespace

//==============================================================================
// Hermite functions and polynomials
//==============================================================================

TEST(Hermite, LowOrderClosedForms) {
  const Grid& g = default_grid();
  EXPECT_LT((hermite_function(g, HermiteIndex(0, 0)) - RealField::sample(g, gauss)).max_abs(), 1e-16);
  EXPECT_LT((hermite_function(g, HermiteIndex(1, 0)) -
             RealField::sample(g, [](double x, double y) { return -0.5 * x * gauss(x, y); }))
                .max_abs(),
            1e-16);
  EXPECT_LT((hermite_function(g, HermiteIndex(1, 1)) - sample_profile(g, Profile::H3)).max_abs(), 1e-16);
  // K = d1 H1 = phi_(3,0) + phi_(1,2)
  EXPECT_LT((hermite_function(g, HermiteIndex(3, 0)) + hermite_function(g, HermiteIndex(1, 2)) -
             sample_profile(g, Profile::K))
                .max_abs(),
            1e-15);
}

TEST(Hermite, PolynomialClosedForms) {
  EXPECT_DOUBLE_EQ(hermite_polynomial(HermiteIndex(0, 0))(0.7, -2.0), 1.0);
  EXPECT_DOUBLE_EQ(hermite_polynomial(HermiteIndex(1, 0))(0.7, -2.0), -0.7);
  // H_(2,0) = (2^2/2!) (x^2/4 - 1/2) = x^2/2 - 1
  EXPECT_NEAR(hermite_polynomial(HermiteIndex(2, 0))(1.5, 3.0), 1.5 * 1.5 / 2.0 - 1.0, 1e-15);
}

TEST(Hermite, Biorthogonality) {
  const Grid& g = default_grid();
  std::vector<HermiteIndex> idx;
  for (int order = 0; order <= 3; ++order) {
    for (int a = 0; a <= order; ++a) idx.emplace_back(a, order - a);
  }
  for (const auto& a : idx) {
    const Polynomial2D p = hermite_polynomial(a);
    for (const auto& b : idx) {
      const RealField phi = hermite_function(g, b);
      double s = 0.0;
      for (int i = 0; i < g.n(); ++i) {
        for (int j = 0; j < g.n(); ++j) s += p(g.coord(i), g.coord(j)) * phi(i, j);
      }
      EXPECT_NEAR(s * g.cell_area(), a == b ? 1.0 : 0.0, 1e-8);
    }
  }
}

TEST(Hermite, RejectsBadIndices) {
  EXPECT_THROW(HermiteIndex(-1, 0), PreconditionError);
  EXPECT_THROW(HermiteIndex(4, 3), PreconditionError);
  EXPECT_NO_THROW(HermiteIndex(3, 3));
}

TEST(Moments, GammaPairingWithH) {
  const Grid& g = default_grid();
  const Profile hs[3] = {Profile::H1, Profile::H2, Profile::H3};
  for (int k = 0; k < 3; ++k) {
    const auto m = extract_moments(sample_profile(g, hs[k]));
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(m.gamma[j], j == k ? 1.0 : 0.0, 1e-8);
  }
}

//==============================================================================
// The operator L
//==============================================================================

TEST(OperatorL, Eigenvalues) {
  const Grid& g = default_grid();
  EXPECT_LT(lp_norm(apply_L(sample_profile(g, Profile::G)), 2.0), 1e-8);
  const RealField f1 = sample_profile(g, Profile::F1);
  EXPECT_LT(l2_diff(apply_L(f1), -0.5 * f1), 1e-8);
  const RealField h2 = sample_profile(g, Profile::H2);
  EXPECT_LT(l2_diff(apply_L(h2), -1.0 * h2), 1e-8);
}

TEST(OperatorL, EigenvalueTable) {
  const Grid& g = default_grid();
  for (int order = 0; order <= 3; ++order) {
    for (int a = 0; a <= order; ++a) {
      const RealField phi = hermite_function(g, HermiteIndex(a, order - a));
      RealField r = apply_L(phi);
      r.add_scaled(0.5 * order, phi);
      EXPECT_LE(lp_norm(r, 2.0), 1e-7 * lp_norm(phi, 2.0)) << a << ',' << order - a;
    }
  }
}

TEST(OperatorL, WarnsOnBoundaryMass) {
  const Grid g(64, 3.0);
  WarningCapture capture;
  apply_L(sample_profile(g, Profile::G));
  EXPECT_TRUE(capture.contains("boundary_truncation"));
}

//==============================================================================
// Projections
//==============================================================================

TEST(Projection, Examples) {
  const Grid& g = default_grid();
  const RealField G = sample_profile(g, Profile::G);
  EXPECT_LT((project(G, ProjectionSpec(0, 2.0), ProjectionPart::P) - G).max_abs(), 1e-10);
  const RealField gh = G + sample_profile(g, Profile::H2);
  EXPECT_LT(project(gh, ProjectionSpec(2, 4.0), ProjectionPart::Q).max_abs(), 1e-8);
  EXPECT_LT(project(sample_profile(g, Profile::K), ProjectionSpec(2, 4.0), ProjectionPart::P).max_abs(), 1e-8);
}

TEST(Projection, ComplementaryAndIdempotent) {
  const Grid& g = default_grid();
  const RealField w = smooth_field(g);
  const ProjectionSpec spec(2, 4.0);
  const RealField p = project(w, spec, ProjectionPart::P);
  const RealField q = project(w, spec, ProjectionPart::Q);
  EXPECT_LT((p + q - w).max_abs(), 1e-14);
  EXPECT_LT((project(p, spec, ProjectionPart::P) - p).max_abs(), 1e-10);
  for (const auto& [idx, c] : hermite_coefficients(q, 2)) EXPECT_NEAR(c, 0.0, 1e-10);
}

TEST(Projection, Preconditions) {
  EXPECT_THROW(ProjectionSpec(2, 3.0), PreconditionError);
  EXPECT_THROW(ProjectionSpec(1, 2.0), PreconditionError);
  EXPECT_THROW(ProjectionSpec(2, 6.5), PreconditionError);
  EXPECT_NO_THROW(ProjectionSpec(2, 3.5));
}

//==============================================================================
// Semigroup
//==============================================================================

TEST(Semigroup, EigenAction) {
  const Grid& g = default_grid();
  for (int order = 0; order <= 2; ++order) {
    for (int a = 0; a <= order; ++a) {
      const RealField phi = hermite_function(g, HermiteIndex(a, order - a));
      for (double tau : {0.5, 1.0, 2.0}) {
        EXPECT_LT((semigroup_apply(phi, tau) - std::exp(-0.5 * order * tau) * phi).max_abs(), 1e-6 * phi.max_abs());
      }
    }
  }
}

TEST(Semigroup, IdentityAndFixedPoint) {
  const Grid& g = default_grid();
  const RealField w = smooth_field(g);
  EXPECT_EQ((semigroup_apply(w, 0.0) - w).max_abs(), 0.0);
  const RealField G = sample_profile(g, Profile::G);
  EXPECT_LT((semigroup_apply(G, 5.0) - G).max_abs(), 1e-6);
  EXPECT_THROW(semigroup_apply(w, -0.1), PreconditionError);
}

TEST(Semigroup, GroupProperty) {
  const Grid& g = default_grid();
  const RealField w = smooth_field(g);
  for (auto [a, b] : {std::pair{0.3, 0.7}, std::pair{1.0, 2.0}, std::pair{2.0, 0.5}}) {
    EXPECT_LT(l2_diff(semigroup_apply(semigroup_apply(w, a), b), semigroup_apply(w, a + b)), 1e-8);
  }
}

TEST(Semigroup, MassPreserved) {
  const Grid& g = default_grid();
  const RealField w = smooth_field(g);
  EXPECT_NEAR(integrate(semigroup_apply(w, 1.7)), integrate(w), 1e-12);
}

TEST(Semigroup, GeneratorConsistency) {
  const Grid& g = default_grid();
  const RealField w = smooth_field(g);
  const RealField Lw = apply_L(w);
  double prev = 0.0;
  for (double h : {1e-2, 5e-3, 2.5e-3}) {
    RealField d = semigroup_apply(w, h) - w;
    d *= 1.0 / h;
    const double err = l2_diff(d, Lw);
    if (prev > 0.0) {
      EXPECT_NEAR(prev / err, 2.0, 0.2);  // first order in h
    }
    prev = err;
  }
}

TEST(Semigroup, CommutesWithDerivativeUpToScale) {
  const Grid& g = default_grid();
  const RealField w = smooth_field(g);
  const double tau = 0.8;
  for (int axis = 0; axis < 2; ++axis) {
    const RealField lhs = spectral_derivative(semigroup_apply(w, tau), axis);
    const RealField rhs = std::exp(tau / 2.0) * semigroup_apply(spectral_derivative(w, axis), tau);
    EXPECT_LT(l2_diff(lhs, rhs), 1e-7);
  }
}

TEST(SemigroupRates, DecayRates) {
  const Grid g(128, 12.0);
  const std::vector<double> taus{1.0, 2.0, 3.0, 4.0, 5.0};
  const SgestimResult q2 = verify_sgestim(g, 4.0, 2, taus, 6, 3);
  EXPECT_LE(q2.worst.rate, -1.45);
  EXPECT_DOUBLE_EQ(q2.bound, -1.45);
  EXPECT_TRUE(q2.pass);
  EXPECT_EQ(q2.rows.size(), 6u * taus.size());
  const SgestimResult q1 = verify_sgestim(g, 3.0, 1, taus, 6, 3);
  EXPECT_LE(q1.worst.rate, -0.95);
}

TEST(SemigroupRates, RejectsInvalidParameters) {
  const Grid g(64, 12.0);
  EXPECT_THROW(verify_sgestim(g, 3.0, 2, {1.0, 2.0}), PreconditionError);
  EXPECT_THROW(verify_sgestim(g, 4.0, 2, {1.0}), PreconditionError);
}
