#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "lohe/meanfield.hpp"
#include "support.hpp"

using namespace lohe;
using lohe::testing::random_cloud;

namespace {

StepperConfig grid(double dt, double t_end, std::size_t record_every = 1) {
  StepperConfig cfg;
  cfg.dt = dt;
  cfg.t_end = t_end;
  cfg.record_every = record_every;
  return cfg;
}

}  // namespace

TEST(ReferenceField, OneCentroidPerStagePlusTheEnd) {
  Rng rng(1);
  const Ensemble e0(random_cloud(rng, 2, 16), 2.0);
  const StepperConfig cfg = grid(0.1, 0.5);
  const ReferenceRun ref = reference_field(e0, cfg);
  ASSERT_EQ(ref.field.means.size(), 5u * 2u + 1u);
  for (std::size_t k = 0; k < 5; ++k) {
    EXPECT_NEAR(ref.field.times[2 * k], 0.1 * k, 1e-12);
    EXPECT_NEAR(ref.field.times[2 * k + 1], 0.1 * k + 0.05, 1e-12);
  }
  EXPECT_DOUBLE_EQ(ref.field.times.back(), 0.5);
  EXPECT_EQ(ref.field.means.front(), centroid(e0.oscillators()));
  EXPECT_EQ(ref.field.means.back(), centroid(ref.trajectory.back().oscillators()));
  EXPECT_EQ(ref.field.d, 2);
  EXPECT_EQ(ref.field.kappa, 2.0);
}

TEST(ReferenceField, EulerRecordsOneCentroidPerStep) {
  Rng rng(2);
  StepperConfig cfg = grid(0.1, 0.3);
  cfg.method = Method::LieEuler;
  const ReferenceRun ref = reference_field(Ensemble(random_cloud(rng, 2, 4), 1.0), cfg);
  EXPECT_EQ(ref.field.means.size(), 4u);
}

TEST(FieldTrajectory, ValidateRejectsOversizedMean) {
  FieldTrajectory f;
  f.times = {0.0};
  f.means = {1.5 * ComplexMatrix::Identity(2, 2)};
  EXPECT_THROW(f.validate(), NumericError);
  f.means = {ComplexMatrix::Identity(2, 2)};
  EXPECT_NO_THROW(f.validate());
}

TEST(Characteristics, ReproduceTheReferenceParticlesExactly) {
  Rng rng(3);
  const std::vector<Oscillator> cloud = random_cloud(rng, 3, 12);
  const StepperConfig cfg = grid(0.02, 1.0, 5);
  const ReferenceRun ref = reference_field(Ensemble(cloud, 1.5), cfg);
  const Trajectory chars = flow_characteristics(cloud, ref.field, cfg);
  ASSERT_EQ(chars.size(), ref.trajectory.size());
  for (std::size_t k = 0; k < chars.size(); ++k) {
    EXPECT_EQ(chars.times[k], ref.trajectory.times[k]);
    for (std::size_t j = 0; j < cloud.size(); ++j) {
      EXPECT_EQ(chars.snapshots[k][j].u, ref.trajectory.snapshots[k][j].u);
    }
  }
}

TEST(Characteristics, ZeroCouplingIsFreeRotation) {
  Rng rng(4);
  const std::vector<Oscillator> cloud = random_cloud(rng, 2, 8);
  const StepperConfig cfg = grid(0.05, 1.0, 100);
  const ReferenceRun ref = reference_field(Ensemble(cloud, 0.0), cfg);
  const std::vector<Oscillator> others = random_cloud(rng, 2, 3);
  const Trajectory chars = flow_characteristics(others, ref.field, cfg);
  for (std::size_t j = 0; j < others.size(); ++j) {
    const ComplexMatrix want = expm_skew(others[j].a, 1.0).matrix() * others[j].u.matrix();
    EXPECT_LE((chars.back()[j].u.matrix() - want).norm(), 1e-12);
  }
}

TEST(Characteristics, GridMismatchRejected) {
  Rng rng(5);
  const StepperConfig cfg = grid(0.1, 1.0);
  const ReferenceRun ref = reference_field(Ensemble(random_cloud(rng, 2, 4), 1.0), cfg);
  const std::vector<Oscillator> cloud = random_cloud(rng, 2, 2);
  StepperConfig other = cfg;
  other.dt = 0.05;
  EXPECT_THROW(flow_characteristics(cloud, ref.field, other), std::invalid_argument);
  other = cfg;
  other.t_end = 2.0;
  EXPECT_THROW(flow_characteristics(cloud, ref.field, other), std::invalid_argument);
  other = cfg;
  other.method = Method::LieEuler;
  try {
    flow_characteristics(cloud, ref.field, other);
    FAIL() << "expected invalid_argument";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("grid mismatch"), std::string::npos);
  }
  EXPECT_THROW(flow_characteristics(random_cloud(rng, 3, 2), ref.field, cfg), DimensionError);
}

TEST(Jn, VanishesForTheReferenceParticles) {
  Rng rng(6);
  const std::vector<Oscillator> cloud = random_cloud(rng, 2, 10);
  const StepperConfig cfg = grid(0.05, 1.0, 4);
  const ReferenceRun ref = reference_field(Ensemble(cloud, 2.0), cfg);
  const DiagnosticSeries jn = jn_series(run_coupled(cloud, ref.field, cfg));
  for (double v : jn.column("JN")) EXPECT_EQ(v, 0.0);
}

TEST(Jn, StartsAtZeroAndStaysNonnegativeForSubsamples) {
  Rng rng(7);
  const std::vector<Oscillator> cloud = random_cloud(rng, 2, 64);
  const StepperConfig cfg = grid(0.05, 1.0, 4);
  const ReferenceRun ref = reference_field(Ensemble(cloud, 1.0), cfg);
  const std::vector<Oscillator> sub(cloud.begin(), cloud.begin() + 4);
  const DiagnosticSeries jn = jn_series(run_coupled(sub, ref.field, cfg));
  const auto& col = jn.column("JN");
  EXPECT_EQ(col.front(), 0.0);
  for (double v : col) EXPECT_GE(v, 0.0);
  EXPECT_GT(col.back(), 0.0);
  // Both runs share the generators, so J_N is a mean of squared state gaps,
  // each at most (2√d)².
  for (double v : col) EXPECT_LE(v, 8.0);
}

TEST(Gauge, IdenticalHamiltonianRunMapsToTheHamiltonianFreeRun) {
  Rng rng(8);
  const SkewHermitianMatrix a = sample_gaussian_su(rng, 2);
  std::vector<Oscillator> with_a, without;
  for (int j = 0; j < 6; ++j) {
    const UnitaryMatrix u = sample_haar(rng, 2);
    with_a.emplace_back(u, a);
    without.emplace_back(u, SkewHermitianMatrix::zero(2));
  }
  const StepperConfig cfg = grid(1e-3, 1.0, 100);
  const Trajectory rotated = gauge_transform(integrate(Ensemble(with_a, 1.0), cfg, lohe_generator_fn()), a);
  const Trajectory direct = integrate(Ensemble(without, 1.0), cfg, lohe_generator_fn());
  ASSERT_EQ(rotated.size(), direct.size());
  for (std::size_t k = 0; k < direct.size(); ++k) {
    for (std::size_t j = 0; j < with_a.size(); ++j) {
      EXPECT_LE((rotated.snapshots[k][j].u.matrix() - direct.snapshots[k][j].u.matrix()).norm(), 1e-6);
      EXPECT_EQ(rotated.snapshots[k][j].a, SkewHermitianMatrix::zero(2));
    }
  }
}

TEST(Gauge, MixedGeneratorsRejected) {
  Rng rng(9);
  const std::vector<Oscillator> cloud = random_cloud(rng, 2, 3);
  const Trajectory traj = integrate(Ensemble(cloud, 1.0), grid(0.1, 0.2), lohe_generator_fn());
  EXPECT_THROW(gauge_transform(traj, cloud[0].a), std::invalid_argument);
}

TEST(Fluctuation, ExactValueFromPairwiseIndependence) {
  // E‖K(U, V)‖₂² = 2d − 2 Re E tr((UV*)²) = 2d for independent Haar U, V, and
  // cross terms vanish because E U_k = 0. Summing N − 1 terms over N².
  for (int d : {1, 2, 3}) {
    for (std::size_t n : {1u, 2u, 10u, 100u}) {
      Rng rng(10);
      const FluctuationEstimate f = field_fluctuation_bound_check(rng, d, n, 2);
      const double nd = static_cast<double>(n);
      EXPECT_DOUBLE_EQ(f.exact, (nd - 1.0) * 2.0 * d / (nd * nd));
      EXPECT_DOUBLE_EQ(f.bound, 16.0 * d / nd);
    }
  }
}

TEST(Fluctuation, MonteCarloAgreesWithExactValue) {
  for (int d : {1, 2, 3}) {
    for (std::size_t n : {4u, 16u, 64u}) {
      Rng rng(100 + 10 * d + n);
      const FluctuationEstimate f = field_fluctuation_bound_check(rng, d, n, 4000);
      EXPECT_NEAR(f.estimate, f.exact, 5.0 * f.standard_error) << "d=" << d << " n=" << n;
      EXPECT_LE(f.estimate, f.bound);
      EXPECT_LE(f.max_v_norm, 2.0 * 2.0 * std::sqrt(static_cast<double>(d)));
      EXPECT_EQ(f.samples, 4000u);
    }
  }
}

TEST(Fluctuation, SingleParticleHasNoFluctuation) {
  Rng rng(11);
  const FluctuationEstimate f = field_fluctuation_bound_check(rng, 2, 1, 10);
  EXPECT_EQ(f.estimate, 0.0);
  EXPECT_EQ(f.exact, 0.0);
}

TEST(Fluctuation, RejectsBadArguments) {
  Rng rng(12);
  EXPECT_THROW(field_fluctuation_bound_check(rng, 0, 4, 10), DimensionError);
  EXPECT_THROW(field_fluctuation_bound_check(rng, 2, 0, 10), std::invalid_argument);
  EXPECT_THROW(field_fluctuation_bound_check(rng, 2, 4, 1), std::invalid_argument);
}

TEST(HaarCentroid, SquaredNormHasMeanDOverP) {
  const int d = 2;
  for (std::size_t p : {4u, 32u}) {
    Rng rng(13 + p);
    const int samples = 4000;
    double sum = 0.0, sum2 = 0.0;
    for (int s = 0; s < samples; ++s) {
      const double v = centroid(random_cloud(rng, d, p)).squaredNorm();
      sum += v;
      sum2 += v * v;
    }
    const double mean = sum / samples;
    const double se = std::sqrt((sum2 / samples - mean * mean) / samples);
    EXPECT_NEAR(mean, static_cast<double>(d) / p, 5.0 * se);
  }
}
