/// @file test_core_fields.cpp
/// @brief Grid, transforms, quadrature, norms, derivatives and field I/O.

#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "ns2d/error.hpp"
#include "ns2d/field_io.hpp"
#include "ns2d/fields.hpp"
#include "ns2d/profiles.hpp"

using namespace ns2d;

namespace {

constexpr double kPi = std::numbers::pi;

// Closed-form Gaussian G = exp(-r^2/4) / (4 pi); independent of the library tables.
double gauss(double x1, double x2) { return std::exp(-(x1 * x1 + x2 * x2) / 4.0) / (4.0 * kPi); }

RealField random_packet(const Grid& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double c[6] = {u(rng), u(rng), u(rng), u(rng), u(rng), u(rng)};
  return RealField::sample(g, [&](double x, double y) {
    return (c[0] + c[1] * x + c[2] * y + c[3] * x * y + c[4] * x * x * x + c[5] * y * y) *
           std::exp(-((x - 0.3) * (x - 0.3) + (y + 0.2) * (y + 0.2)) / 3.0);
  });
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("ns2d_test_" + name);
}

}  // namespace

//==============================================================================
// Grid
//==============================================================================

TEST(Grid, Geometry) {
  const Grid g(128, 12.0);
  EXPECT_DOUBLE_EQ(g.spacing() * g.n(), 24.0);
  EXPECT_DOUBLE_EQ(g.coord(0), -12.0);
  EXPECT_DOUBLE_EQ(g.coord(64), 0.0);
  EXPECT_EQ(g.spectral_cols(), 65);
  EXPECT_EQ(g.signed_mode(63), 63);
  EXPECT_EQ(g.signed_mode(64), -64);
  EXPECT_NEAR(g.wavenumber(1), kPi / 12.0, 1e-15);
  EXPECT_DOUBLE_EQ(g.wavenumber(127), -g.wavenumber(1));
}

TEST(Grid, RejectsInvalid) {
  EXPECT_THROW(Grid(15, 12.0), PreconditionError);
  EXPECT_THROW(Grid(8, 12.0), PreconditionError);
  EXPECT_THROW(Grid(64, 0.0), PreconditionError);
  EXPECT_THROW(Grid(64, -1.0), PreconditionError);
  EXPECT_NO_THROW(Grid(16, 1.0));
}

//==============================================================================
// Transforms
//==============================================================================

TEST(Transform, GaussianZeroModeIsMass) {
  const Grid g(128, 12.0);
  const SpectralField f = forward_transform(RealField::sample(g, gauss));
  EXPECT_NEAR(f(0, 0).real(), 1.0, 1e-10);
  EXPECT_NEAR(f(0, 0).imag(), 0.0, 1e-14);
}

TEST(Transform, GaussianMatchesAnalyticTransform) {
  const Grid g(128, 12.0);
  const SpectralField f = forward_transform(RealField::sample(g, gauss));
  double err = 0.0;
  for (int k1 = 0; k1 < g.n(); ++k1) {
    for (int k2 = 0; k2 < g.spectral_cols(); ++k2) {
      const double p1 = g.wavenumber(k1), p2 = g.wavenumber(k2);
      err = std::max(err, std::abs(f(k1, k2) - std::exp(-(p1 * p1 + p2 * p2))));
    }
  }
  EXPECT_LT(err, 1e-10);
}

TEST(Transform, ZeroFieldHasZeroCoefficients) {
  const Grid g(64, 8.0);
  const SpectralField f = forward_transform(RealField(g));
  for (const auto& c : f.coeffs()) EXPECT_EQ(std::abs(c), 0.0);
}

TEST(Transform, RoundTrip) {
  const Grid g(128, 12.0);
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const RealField w = random_packet(g, seed);
    EXPECT_LE((inverse_transform(forward_transform(w)) - w).max_abs(), 1e-12 * w.max_abs());
  }
}

TEST(Transform, Parseval) {
  const Grid g(128, 12.0);
  const RealField w = random_packet(g, 11);
  const SpectralField f = forward_transform(w);
  double spec = 0.0;
  for (int k1 = 0; k1 < g.n(); ++k1) {
    for (int k2 = 0; k2 < g.spectral_cols(); ++k2) {
      const double weight = (k2 == 0 || k2 == g.n() / 2) ? 1.0 : 2.0;
      spec += weight * std::norm(f(k1, k2));
    }
  }
  const double dp = kPi / g.half_width();
  spec *= dp * dp / (4.0 * kPi * kPi);
  double direct = 0.0;
  for (double x : w.values()) direct += x * x;
  direct *= g.cell_area();
  EXPECT_LE(std::abs(spec - direct), 1e-8 * direct);
}

//==============================================================================
// Quadrature and norms
//==============================================================================

TEST(Quadrature, GaussianMoments) {
  const Grid g(256, 12.0);
  EXPECT_NEAR(integrate(RealField::sample(g, gauss)), 1.0, 1e-10);
  EXPECT_NEAR(integrate(sample_profile(g, Profile::F1)), 0.0, 1e-12);
  EXPECT_NEAR(integrate(RealField::sample(g, [](double x, double y) { return x * x * gauss(x, y); })), 2.0, 1e-8);
}

TEST(Quadrature, HermiteTypeProfilesExact) {
  // int x^4 y^2 G = 12 * 2 and int x^6 G = 120 from the 1D moments of a variance-2 Gaussian
  const Grid g(256, 12.0);
  EXPECT_NEAR(integrate(RealField::sample(g, [](double x, double y) { return std::pow(x, 4) * y * y * gauss(x, y); })),
              24.0, 1e-8);
  EXPECT_NEAR(integrate(RealField::sample(g, [](double x, double y) { return std::pow(x, 6) * gauss(x, y); })), 120.0,
              1e-8);
}

TEST(Norms, GaussianOracles) {
  const Grid g(256, 12.0);
  const RealField G = RealField::sample(g, gauss);
  EXPECT_NEAR(lp_norm(G, 1.0), 1.0, 1e-10);
  EXPECT_NEAR(lp_norm(G, 2.0), 1.0 / std::sqrt(8.0 * kPi), 1e-8);
  EXPECT_NEAR(lp_norm(G, kInfinity), 1.0 / (4.0 * kPi), 1e-15);
  EXPECT_NEAR(weighted_norm(G, WeightSpec(0)), 0.19947114020071635, 1e-8);
  EXPECT_GE(weighted_norm(G, WeightSpec(2)), weighted_norm(G, WeightSpec(0)));
  EXPECT_EQ(weighted_norm(RealField(g), WeightSpec(3)), 0.0);
}

TEST(Norms, WeightedMonotoneInExponent) {
  const Grid g(128, 12.0);
  const RealField w = random_packet(g, 5);
  double prev = 0.0;
  for (double m : {0.0, 0.5, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0}) {
    const double x = weighted_norm(w, WeightSpec(m));
    EXPECT_GE(x, prev);
    prev = x;
  }
}

TEST(Norms, Preconditions) {
  const Grid g(64, 8.0);
  EXPECT_THROW(lp_norm(RealField(g), 0.5), PreconditionError);
  EXPECT_THROW(WeightSpec(-1.0), PreconditionError);
  EXPECT_THROW(WeightSpec(7.0), PreconditionError);
}

TEST(Norms, TruncationWarning) {
  const Grid g(64, 4.0);
  WarningCapture capture;
  weighted_norm(RealField::sample(g, gauss), WeightSpec(6));
  EXPECT_TRUE(capture.contains("weight_truncation"));
}

//==============================================================================
// Derivatives and dealiasing
//==============================================================================

TEST(Derivative, GaussianDerivatives) {
  const Grid g(256, 12.0);
  const RealField G = RealField::sample(g, gauss);
  const RealField F1 = RealField::sample(g, [](double x, double y) { return -0.5 * x * gauss(x, y); });
  const RealField H3 = RealField::sample(g, [](double x, double y) { return 0.25 * x * y * gauss(x, y); });
  EXPECT_LT((spectral_derivative(G, 0) - F1).max_abs(), 1e-8);
  EXPECT_LT((spectral_derivative(spectral_derivative(G, 0), 1) - H3).max_abs(), 1e-8);
  EXPECT_EQ(spectral_derivative(RealField(g), 1).max_abs(), 0.0);
}

TEST(Dealias, ProjectionProperties) {
  const Grid g(64, 8.0);
  SpectralField f(g);
  f(g.n() / 2 - 1, 0) = 1.0;
  f(1, 1) = 2.0;
  const SpectralField d = dealias(f);
  EXPECT_EQ(std::abs(d(g.n() / 2 - 1, 0)), 0.0);
  EXPECT_EQ(d(1, 1), std::complex<double>(2.0));

  const SpectralField r = forward_transform(random_packet(g, 3));
  double before = 0.0, after = 0.0;
  for (auto c : r.coeffs()) before += std::norm(c);
  for (auto c : dealias(r).coeffs()) after += std::norm(c);
  EXPECT_LE(after, before);

  const SpectralField band = dealias(r);
  const SpectralField again = dealias(band);
  for (std::size_t i = 0; i < band.coeffs().size(); ++i) EXPECT_EQ(band.coeffs()[i], again.coeffs()[i]);
}

//==============================================================================
// Field I/O
//==============================================================================

TEST(FieldIo, BinaryRoundTrip) {
  const Grid g(32, 6.0);
  const RealField w = random_packet(g, 9);
  const auto path = temp_path("roundtrip.bin");
  write_binary(path, w);
  const RealField r = read_binary(path);
  EXPECT_TRUE(r.grid() == g);
  for (std::size_t i = 0; i < w.values().size(); ++i) EXPECT_EQ(w.values()[i], r.values()[i]);
  EXPECT_EQ(std::filesystem::file_size(path), 16u + 8u * g.size());
  std::filesystem::remove(path);
}

TEST(FieldIo, RejectsTruncatedFile) {
  const Grid g(32, 6.0);
  const auto path = temp_path("truncated.bin");
  write_binary(path, RealField(g));
  std::filesystem::resize_file(path, 100);
  EXPECT_THROW(read_binary(path), IoError);
  std::filesystem::remove(path);
  EXPECT_THROW(read_binary(temp_path("does_not_exist.bin")), IoError);
}

TEST(FieldIo, CsvHasOneRowPerNode) {
  const Grid g(16, 2.0);
  const auto path = temp_path("field.csv");
  write_csv(path, RealField::sample(g, gauss));
  std::ifstream in(path);
  std::string line;
  int rows = 0;
  std::getline(in, line);
  EXPECT_EQ(line, "xi1,xi2,value");
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 256);
  std::filesystem::remove(path);
}
