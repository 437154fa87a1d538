#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "lohe/analysis.hpp"
#include "support.hpp"

using namespace lohe;
using lohe::testing::random_cloud;

namespace {

Oscillator diag_osc(double a, double b) {
  ComplexMatrix u = ComplexMatrix::Zero(2, 2);
  u(0, 0) = a;
  u(1, 1) = b;
  return Oscillator(UnitaryMatrix(u), SkewHermitianMatrix::zero(2));
}

double residual(double z, double eta) { return std::abs(0.5 * z * z * z - z + eta); }

}  // namespace

TEST(DiagnosticSeries, ColumnsKeepOrderAndLength) {
  DiagnosticSeries s({0.0, 1.0});
  s.set("D", {1.0, 0.5});
  s.set("Lambda", {0.3, 0.1});
  s.set("D", {2.0, 1.0});
  EXPECT_EQ(s.names(), (std::vector<std::string>{"D", "Lambda"}));
  EXPECT_EQ(s.column("D")[0], 2.0);
  EXPECT_TRUE(s.has("Lambda"));
  EXPECT_FALSE(s.has("JN"));
  EXPECT_THROW(s.set("JN", {1.0}), std::invalid_argument);
  EXPECT_THROW(s.column("JN"), std::out_of_range);
}

TEST(Diameter, Examples) {
  const std::vector<Oscillator> one{diag_osc(1, 1)};
  EXPECT_EQ(diameter(one), 0.0);
  const std::vector<Oscillator> three{diag_osc(1, 1), diag_osc(-1, 1), diag_osc(1, -1)};
  EXPECT_NEAR(diameter(three), 2.0 * std::sqrt(2.0), 1e-15);
  const std::vector<Oscillator> two{diag_osc(1, 1), diag_osc(-1, 1)};
  EXPECT_DOUBLE_EQ(diameter(two), 2.0);
  EXPECT_THROW(diameter(std::vector<Oscillator>{}), std::invalid_argument);
}

TEST(FrequencySpread, Examples) {
  Rng rng(1);
  const SkewHermitianMatrix a = sample_gaussian_su(rng, 2);
  const SkewHermitianMatrix b = sample_gaussian_su(rng, 2);
  std::vector<Oscillator> same{{sample_haar(rng, 2), a}, {sample_haar(rng, 2), a}};
  EXPECT_EQ(frequency_spread(same), 0.0);
  std::vector<Oscillator> pair{{sample_haar(rng, 2), a}, {sample_haar(rng, 2), b}};
  EXPECT_DOUBLE_EQ(frequency_spread(pair), (a.matrix() - b.matrix()).norm());
}

TEST(Lambda, Examples) {
  const std::vector<Oscillator> equal{diag_osc(1, 1), diag_osc(1, 1), diag_osc(1, 1)};
  EXPECT_EQ(lambda_functional(equal), 0.0);
  const std::vector<Oscillator> two{diag_osc(1, 1), diag_osc(-1, 1)};
  EXPECT_DOUBLE_EQ(lambda_functional(two), 4.0 / 2.0);
}

TEST(Lambda, NeverExceedsDiameterSquared) {
  Rng rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const auto cloud = random_cloud(rng, 1 + trial % 3, 2 + trial % 7);
    const double dia = diameter(cloud);
    EXPECT_LE(lambda_functional(cloud), dia * dia * (1.0 + 1e-12));
  }
}

TEST(Lambda, MatchesFullDoubleSum) {
  Rng rng(3);
  const auto cloud = random_cloud(rng, 2, 9);
  double sum = 0.0;
  for (const auto& a : cloud) {
    for (const auto& b : cloud) sum += (a.u.matrix() - b.u.matrix()).squaredNorm();
  }
  EXPECT_NEAR(lambda_functional(cloud), sum / 81.0, 1e-13);
}

TEST(ZetaRoots, EtaZero) {
  const CubicRoots r = zeta_roots(0.0);
  EXPECT_NEAR(r.zeta1, 0.0, 1e-12);
  EXPECT_NEAR(r.zeta2, std::sqrt(2.0), 1e-12);
}

TEST(ZetaRoots, EtaPointOne) {
  const CubicRoots r = zeta_roots(0.1);
  EXPECT_LE(residual(r.zeta1, 0.1), 1e-12);
  EXPECT_LE(residual(r.zeta2, 0.1), 1e-12);
  EXPECT_LT(r.zeta1, r.zeta2);
}

TEST(ZetaRoots, BracketOnGrid) {
  const double pivot = std::sqrt(2.0 / 3.0);
  for (int k = 0; k < 100; ++k) {
    const double eta = eta_max() * k / 100.0;
    const CubicRoots r = zeta_roots(eta);
    EXPECT_LE(residual(r.zeta1, eta), 1e-12);
    EXPECT_LE(residual(r.zeta2, eta), 1e-12);
    EXPECT_GE(r.zeta1, 0.0);
    EXPECT_LT(r.zeta1, pivot);
    EXPECT_GT(r.zeta2, pivot);
    EXPECT_LE(r.zeta2, std::sqrt(2.0));
  }
}

TEST(ZetaRoots, DoubleRootAtTheBoundary) {
  const double pivot = std::sqrt(2.0 / 3.0);
  EXPECT_NEAR(0.5 * pivot * pivot * pivot - pivot + eta_max(), 0.0, 1e-15);
  const CubicRoots r = zeta_roots(std::nextafter(eta_max(), 0.0));
  EXPECT_NEAR(r.zeta1, pivot, 1e-6);
  EXPECT_NEAR(r.zeta2, pivot, 1e-6);
}

TEST(ZetaRoots, OutOfRange) {
  for (double eta : {-0.01, eta_max(), 1.0}) {
    try {
      zeta_roots(eta);
      FAIL() << "expected domain_error";
    } catch (const std::domain_error& e) {
      EXPECT_NE(std::string(e.what()).find("no two nonnegative roots"), std::string::npos);
    }
  }
}

TEST(Barrier, EquilibriumAtSmallerRoot) {
  const double alpha = 0.3, kappa = 1.0;
  const double z1 = zeta_roots(alpha / kappa).zeta1;
  std::vector<double> grid{0.0, 1.0, 5.0, 10.0};
  for (double y : barrier_ode(alpha, kappa, z1, grid).y) EXPECT_NEAR(y, z1, 1e-9);
}

TEST(Barrier, ZeroAlphaMatchesClosedForm) {
  const double kappa = 1.3, y0 = 1.1;
  std::vector<double> grid;
  for (int k = 0; k <= 50; ++k) grid.push_back(0.1 * k);
  const BarrierSolution s = barrier_ode(0.0, kappa, y0, grid);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double t = grid[k];
    const double closed = 2.0 * y0 * y0 / ((2.0 - y0 * y0) * std::exp(2.0 * kappa * t) + y0 * y0);
    EXPECT_NEAR(s.y[k] * s.y[k], closed, 1e-8);
  }
}

TEST(Barrier, MatchesFineEulerOracle) {
  const double alpha = 0.1, kappa = 1.0, y0 = 0.5;
  std::vector<double> grid{0.0, 0.5, 1.0, 2.0};
  const BarrierSolution s = barrier_ode(alpha, kappa, y0, grid);
  double y = y0;
  double t = 0.0;
  const double h = 1e-6;
  for (std::size_t k = 1; k < grid.size(); ++k) {
    const auto n = static_cast<long>(std::llround((grid[k] - t) / h));
    for (long i = 0; i < n; ++i) y += h * (alpha - kappa * y + 0.5 * kappa * y * y * y);
    t = grid[k];
    EXPECT_NEAR(s.y[k], y, 1e-6);
  }
}

TEST(Barrier, CrossingAndStaysBelowLargerRoot) {
  const double alpha = 0.3, kappa = 1.0;
  const double z2 = zeta_roots(0.3).zeta2;
  std::vector<double> grid;
  for (int k = 0; k <= 200; ++k) grid.push_back(0.05 * k);
  const BarrierSolution s = barrier_ode(alpha, kappa, 0.99 * z2, grid);
  ASSERT_TRUE(s.first_crossing.has_value());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    EXPECT_LT(s.y[k], z2);
    if (grid[k] >= *s.first_crossing) EXPECT_LE(s.y[k], std::sqrt(2.0 / 3.0));
  }
  // Started below the threshold: the crossing is at t = 0.
  EXPECT_EQ(barrier_ode(alpha, kappa, 0.5, grid).first_crossing, 0.0);
}

TEST(Barrier, RegimeChecks) {
  std::vector<double> grid{0.0, 1.0};
  EXPECT_THROW(barrier_ode(0.1, 0.0, 0.5, grid), std::domain_error);
  EXPECT_THROW(barrier_ode(-0.1, 1.0, 0.5, grid), std::domain_error);
  EXPECT_THROW(barrier_ode(0.6, 1.0, 0.5, grid), std::domain_error);
  try {
    barrier_ode(0.3, 1.0, zeta_roots(0.3).zeta2, grid);
    FAIL() << "expected domain_error";
  } catch (const std::domain_error& e) {
    EXPECT_NE(std::string(e.what()).find("outside barrier regime"), std::string::npos);
  }
}

TEST(Envelopes, Examples) {
  const Envelope e0 = sync_envelopes(1.2, 2.0, 0.0);
  EXPECT_DOUBLE_EQ(e0.lower, 1.44);
  EXPECT_DOUBLE_EQ(e0.upper, 1.44);
  const Envelope e1 = sync_envelopes(1.0, 1.0, 1.0);
  EXPECT_NEAR(e1.upper, 2.0 / (std::exp(2.0) + 1.0), 1e-15);
  const Envelope late = sync_envelopes(1.3, 1.0, 1e3);
  EXPECT_EQ(late.lower, 0.0);
  EXPECT_EQ(late.upper, 0.0);
}

TEST(Envelopes, LowerBelowUpper) {
  for (double d0 : {0.0, 0.1, 0.7, 1.0, 1.4}) {
    for (double t : {0.0, 0.01, 0.5, 3.0, 50.0}) {
      const Envelope e = sync_envelopes(d0, 1.5, t);
      EXPECT_LE(e.lower, e.upper + 1e-15);
      EXPECT_GE(e.lower, 0.0);
    }
  }
}

TEST(Envelopes, UpperSolvesTheRiccatiEquation) {
  // Upper envelope y = D² solves ẏ = −2κy + κy².
  const double d0 = 1.1, kappa = 0.8, h = 1e-5;
  for (double t : {0.2, 1.0, 2.5}) {
    const double y = sync_envelopes(d0, kappa, t).upper;
    const double dy = (sync_envelopes(d0, kappa, t + h).upper - sync_envelopes(d0, kappa, t - h).upper) / (2 * h);
    EXPECT_NEAR(dy, -2.0 * kappa * y + kappa * y * y, 1e-8);
  }
}

TEST(Envelopes, SmallSupportRegime) {
  try {
    sync_envelopes(std::sqrt(2.0), 1.0, 0.0);
    FAIL() << "expected domain_error";
  } catch (const std::domain_error& e) {
    EXPECT_NE(std::string(e.what()).find("outside small-support regime"), std::string::npos);
  }
  EXPECT_THROW(sync_envelopes(1.0, 0.0, 1.0), std::domain_error);
}

TEST(MeanFieldBound, Examples) {
  EXPECT_EQ(mean_field_bound(2, 100, 0.0), 0.0);
  EXPECT_NEAR(mean_field_bound(2, 100, 0.1), 16.0 / 500.0 * (std::numbers::e - 1.0), 1e-15);
  EXPECT_DOUBLE_EQ(mean_field_bound(3, 50, 0.7), 2.0 * mean_field_bound(3, 100, 0.7));
  EXPECT_LT(mean_field_bound(2, 10, 0.5), mean_field_bound(2, 10, 0.6));
  EXPECT_LT(mean_field_bound(2, 10, 0.5), mean_field_bound(3, 10, 0.5));
}

TEST(PracticalSyncLimit, Examples) {
  EXPECT_DOUBLE_EQ(practical_sync_limit(0.1, 1.0), 0.15);
  EXPECT_DOUBLE_EQ(practical_sync_limit(0.1, 2.0), 0.075);
  EXPECT_THROW(practical_sync_limit(0.1, std::pow(1.5, 1.5) * 0.1), std::domain_error);
  EXPECT_THROW(practical_sync_limit(0.0, 1.0), std::domain_error);
}

TEST(AuxIdentity, EqualArgumentsGiveZero) {
  Rng rng(4);
  const UnitaryMatrix u = sample_haar(rng, 3);
  const AuxIdentity r = aux_identity_check(u, u, random_cloud(rng, 3, 5));
  EXPECT_NEAR(r.lhs, 0.0, 1e-14);
  EXPECT_NEAR(r.rhs, 0.0, 1e-14);
}

TEST(AuxIdentity, SingletonCloud) {
  Rng rng(5);
  const UnitaryMatrix u1 = sample_haar(rng, 2);
  const UnitaryMatrix u2 = sample_haar(rng, 2);
  const std::vector<Oscillator> cloud{{u2, SkewHermitianMatrix::zero(2)}};
  EXPECT_LE(aux_identity_check(u1, u2, cloud).gap, 1e-12);
}

TEST(AuxIdentity, ScalarClosedForm) {
  // d = 1, cloud {U₂}: with c = a − b the left side is 2(cos 2c − 1) = −4 sin²c,
  // while −2|Δ|² + ½|Δ|⁴ = −2 sin²c is exactly half of it.
  for (double c : {0.3, 1.1, 2.9}) {
    ComplexMatrix u1(1, 1), u2(1, 1);
    u1(0, 0) = std::polar(1.0, 0.4 + c);
    u2(0, 0) = std::polar(1.0, 0.4);
    const std::vector<Oscillator> cloud{{UnitaryMatrix(u2), SkewHermitianMatrix::zero(1)}};
    const AuxIdentity r = aux_identity_check(UnitaryMatrix(u1), UnitaryMatrix(u2), cloud);
    const double s = std::sin(c);
    EXPECT_NEAR(r.lhs, -4.0 * s * s, 1e-14);
    EXPECT_NEAR(r.rhs, -4.0 * s * s, 1e-14);
    const double delta2 = std::norm(u1(0, 0) - u2(0, 0));
    EXPECT_NEAR(-2.0 * delta2 + 0.5 * delta2 * delta2, 0.5 * r.lhs, 1e-14);
  }
}

TEST(AuxIdentity, RandomizedFuzz) {
  Rng rng(6);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int d = 1 + trial % 4;
    const auto cloud = random_cloud(rng, d, 1 + trial % 16);
    worst = std::max(worst, aux_identity_check(sample_haar(rng, d), sample_haar(rng, d), cloud).gap);
  }
  EXPECT_LE(worst, 1e-11);
}

TEST(DiffNorm2, TraceIdentity) {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 1 + trial % 4;
    const ComplexMatrix u = sample_haar(rng, d).matrix();
    const ComplexMatrix v = sample_haar(rng, d).matrix();
    const ComplexMatrix x = sample_gaussian_su(rng, d).matrix();
    const ComplexMatrix y = sample_gaussian_su(rng, d).matrix();
    const Complex lhs = (u.adjoint() * x * v - v.adjoint() * x * u).trace() +
                        (v.adjoint() * y * u - u.adjoint() * y * v).trace();
    const Complex rhs = (u.adjoint() * (x - y) * (v - u) + (u - v).adjoint() * (x - y) * u).trace();
    EXPECT_LE(std::abs(lhs - rhs), 1e-12);
  }
}
