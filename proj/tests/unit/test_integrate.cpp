#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "lohe/integrate.hpp"
#include "support.hpp"

using namespace lohe;
using lohe::testing::random_cloud;
using lohe::testing::random_ensemble;

namespace {

double max_state_gap(const Ensemble& a, const Ensemble& b) {
  double worst = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    worst = std::max(worst, (a[j].u.matrix() - b[j].u.matrix()).norm());
  }
  return worst;
}

Ensemble final_state(const Ensemble& e0, Method m, double dt, double t_end) {
  StepperConfig cfg;
  cfg.method = m;
  cfg.dt = dt;
  cfg.t_end = t_end;
  cfg.record_every = 1000000;
  return integrate(e0, cfg, lohe_generator_fn()).back();
}

double observed_order(Method m) {
  Rng rng(21);
  const Ensemble e0 = random_ensemble(rng, 2, 6, 1.5);
  const double t_end = 1.0;
  const Ensemble ref = final_state(e0, Method::CF2, 1.0 / 4096.0, t_end);
  std::vector<double> hs{1.0 / 32.0, 1.0 / 64.0, 1.0 / 128.0};
  std::vector<double> errs;
  for (double h : hs) errs.push_back(max_state_gap(final_state(e0, m, h, t_end), ref));
  return std::log(errs.front() / errs.back()) / std::log(hs.front() / hs.back());
}

}  // namespace

TEST(StepperConfig, StepCountAndShortenedLastStep) {
  StepperConfig cfg;
  cfg.dt = 0.1;
  cfg.t_end = 1.0;
  EXPECT_EQ(cfg.steps(), 10u);
  EXPECT_DOUBLE_EQ(cfg.time_of_step(10), 1.0);
  cfg.t_end = 1.05;
  EXPECT_EQ(cfg.steps(), 11u);
  EXPECT_NEAR(cfg.step_length(10), 0.05, 1e-12);
  EXPECT_DOUBLE_EQ(cfg.time_of_step(11), 1.05);
}

TEST(StepperConfig, Validation) {
  StepperConfig cfg;
  cfg.dt = 0.0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg.dt = 2.0;
  cfg.t_end = 1.0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg.dt = 0.1;
  cfg.record_every = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg.record_every = 1;
  cfg.retract_every = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg.retract_every = 1;
  EXPECT_NO_THROW(cfg.validate());
}

TEST(Method, StagesAndNames) {
  EXPECT_EQ(stages(Method::LieEuler), 1);
  EXPECT_EQ(stages(Method::CF2), 2);
  EXPECT_STREQ(to_string(Method::CF2), "CF2");
  EXPECT_STREQ(to_string(Method::LieEuler), "LieEuler");
}

TEST(Integrate, RecordsStartEveryKStepsAndEnd) {
  Rng rng(1);
  const Ensemble e0 = random_ensemble(rng, 2, 3, 1.0);
  StepperConfig cfg;
  cfg.dt = 0.1;
  cfg.t_end = 1.05;
  cfg.record_every = 4;
  const Trajectory traj = integrate(e0, cfg, lohe_generator_fn());
  const std::vector<double> want{0.0, 0.4, 0.8, 1.05};
  ASSERT_EQ(traj.size(), want.size());
  for (std::size_t k = 0; k < want.size(); ++k) EXPECT_NEAR(traj.times[k], want[k], 1e-12);
  EXPECT_EQ(traj.snapshots.front()[0].u, e0[0].u);
}

TEST(Integrate, FreeFlowIsExact) {
  Rng rng(2);
  const Ensemble e0 = random_ensemble(rng, 3, 4, 0.0);
  const Ensemble end = final_state(e0, Method::CF2, 0.01, 1.0);
  for (std::size_t j = 0; j < e0.size(); ++j) {
    const ComplexMatrix want = expm_skew(e0[j].a, 1.0).matrix() * e0[j].u.matrix();
    EXPECT_LE((end[j].u.matrix() - want).norm(), 1e-12);
  }
}

TEST(Integrate, StatesStayUnitary) {
  Rng rng(3);
  const Ensemble e0 = random_ensemble(rng, 4, 10, 3.0);
  StepperConfig cfg;
  cfg.dt = 0.01;
  cfg.t_end = 2.0;
  cfg.record_every = 20;
  for (const auto& snap : integrate(e0, cfg, lohe_generator_fn()).snapshots) {
    EXPECT_LE(max_unitarity_defect(snap), 1e-12);
  }
}

TEST(Integrate, LieEulerIsFirstOrder) { EXPECT_NEAR(observed_order(Method::LieEuler), 1.0, 0.15); }

TEST(Integrate, Cf2IsSecondOrder) { EXPECT_NEAR(observed_order(Method::CF2), 2.0, 0.15); }

TEST(Integrate, BackwardRunReturnsToStart) {
  Rng rng(4);
  const Ensemble e0 = random_ensemble(rng, 2, 5, 2.0);
  const double h = 1e-3;
  Ensemble e = e0;
  for (int k = 0; k < 500; ++k) e = step(e, h, lohe_generator_fn());
  for (int k = 0; k < 500; ++k) e = step(e, -h, lohe_generator_fn());
  EXPECT_LE(max_state_gap(e, e0), 1e-6);
}

TEST(Integrate, DriftAboveToleranceAborts) {
  Rng rng(5);
  std::vector<Oscillator> osc = random_cloud(rng, 2, 3);
  osc[1] = Oscillator(UnitaryMatrix::unchecked(osc[1].u.matrix() * (1.0 + 1e-5)), osc[1].a);
  StepperConfig cfg;
  cfg.dt = 0.01;
  cfg.t_end = 0.1;
  try {
    integrate(Ensemble(osc, 1.0), cfg, lohe_generator_fn());
    FAIL() << "expected NumericError";
  } catch (const NumericError& e) {
    EXPECT_NE(std::string(e.what()).find("drift"), std::string::npos);
  }
}

TEST(Integrate, SmallDriftIsRepaired) {
  Rng rng(6);
  std::vector<Oscillator> osc = random_cloud(rng, 2, 3);
  osc[0] = Oscillator(UnitaryMatrix::unchecked(osc[0].u.matrix() * (1.0 + 1e-9)), osc[0].a);
  StepperConfig cfg;
  cfg.dt = 0.01;
  cfg.t_end = 0.1;
  cfg.retract_every = 1;
  const Trajectory traj = integrate(Ensemble(osc, 1.0), cfg, lohe_generator_fn());
  EXPECT_LE(max_unitarity_defect(traj.back()), 1e-13);
}

TEST(Split, RejectsDistinctHamiltonians) {
  Rng rng(7);
  StepperConfig cfg;
  cfg.dt = 0.1;
  try {
    split_integrate(random_ensemble(rng, 2, 3, 1.0), cfg);
    FAIL() << "expected invalid_argument";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("splitting requires equal Hamiltonians"), std::string::npos);
  }
}

TEST(Split, ZeroCouplingIsTheExactRotation) {
  Rng rng(8);
  const SkewHermitianMatrix a = sample_gaussian_su(rng, 3);
  std::vector<Oscillator> osc;
  for (int j = 0; j < 4; ++j) osc.emplace_back(sample_haar(rng, 3), a);
  StepperConfig cfg;
  cfg.dt = 0.05;
  cfg.t_end = 1.5;
  const Ensemble out = split_integrate(Ensemble(osc, 0.0), cfg);
  const ComplexMatrix r = expm_skew(a, 1.5).matrix();
  for (std::size_t j = 0; j < osc.size(); ++j) {
    EXPECT_LE((out[j].u.matrix() - r * osc[j].u.matrix()).norm(), 1e-13);
    EXPECT_EQ(out[j].a, a);
  }
}

TEST(Split, ZeroHamiltonianMatchesDirectRun) {
  Rng rng(9);
  std::vector<Oscillator> osc;
  for (int j = 0; j < 5; ++j) osc.emplace_back(sample_haar(rng, 2), SkewHermitianMatrix::zero(2));
  const Ensemble e0(osc, 2.0);
  StepperConfig cfg;
  cfg.dt = 0.01;
  cfg.t_end = 1.0;
  EXPECT_LE(max_state_gap(split_integrate(e0, cfg), integrate(e0, cfg, lohe_generator_fn()).back()), 1e-14);
}

TEST(Split, CommonHamiltonianAgreesWithDirectRun) {
  Rng rng(10);
  const SkewHermitianMatrix a = sample_gaussian_su(rng, 2);
  std::vector<Oscillator> osc;
  for (int j = 0; j < 6; ++j) osc.emplace_back(sample_haar(rng, 2), a);
  const Ensemble e0(osc, 1.0);
  StepperConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 1.0;
  EXPECT_LE(max_state_gap(split_integrate(e0, cfg), integrate(e0, cfg, lohe_generator_fn()).back()), 1e-6);
}
