#include "lohe/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numbers>
#include <sstream>
#include <thread>

#include "lohe/transport.hpp"

namespace lohe {

namespace {

// Stream tags; every random draw descends from Rng(cfg.seed) through these.
constexpr std::uint64_t kStreamCommonGenerator = 0x11;
constexpr std::uint64_t kStreamSimulate = 0x21;
constexpr std::uint64_t kStreamReference = 0x31;
constexpr std::uint64_t kStreamCoupled = 0x32;
constexpr std::uint64_t kStreamPractical = 0x41;
constexpr std::uint64_t kStreamFluctuation = 0x51;

constexpr double kEnvelopeSlack = 1e-3;
constexpr double kBarrierSlack = 1e-4;
constexpr double kTransportSlack = 1e-10;

Rng stream(std::uint64_t seed, std::uint64_t tag) { return Rng(seed).split(tag); }

// Runs body(i) for i in [0, count) on up to `threads` workers. Results must be
// written to per-index slots, so the outcome does not depend on the schedule.
template <class Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
  const std::size_t workers = std::min<std::size_t>(std::max(1u, threads), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(count);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::string describe(const char* what, double t, double value, double limit) {
  std::ostringstream os;
  os.precision(17);
  os << what << " at t=" << t << ": " << value << " vs " << limit;
  return os.str();
}

void record_failure(ExperimentResult& r, std::string msg) {
  r.verified = false;
  r.failures.push_back(std::move(msg));
}

}  // namespace

double ExperimentResult::summary_value(const std::string& key) const {
  for (const auto& [k, v] : summary) {
    if (k == key) return v;
  }
  throw std::out_of_range("ExperimentResult: no summary entry '" + key + "'");
}

// --- sampling -------------------------------------------------------------

SkewHermitianMatrix common_generator(const ScenarioConfig& cfg) {
  Rng rng = stream(cfg.seed, kStreamCommonGenerator);
  return sample_gaussian_su(rng, cfg.d, cfg.hamiltonian.sigma);
}

std::vector<UnitaryMatrix> sample_cluster(Rng& rng, int d, std::size_t n, std::uint64_t center_seed,
                                          double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("sample_cluster: radius must be > 0");
  Rng center_rng(center_seed);
  const UnitaryMatrix center = sample_haar(center_rng, d);
  std::vector<UnitaryMatrix> out;
  out.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    const SkewHermitianMatrix b = sample_gaussian_su(rng, d);
    const double xi = rng.uniform();
    const double norm = b.matrix().norm();
    const SkewHermitianMatrix dir = SkewHermitianMatrix::unchecked(b.matrix() / norm);
    out.push_back(UnitaryMatrix::unchecked(expm_skew(dir, radius * xi).matrix() * center.matrix()));
  }
  return out;
}

std::vector<Oscillator> sample_oscillators(const ScenarioConfig& cfg, std::size_t n, Rng& rng) {
  Rng state_rng = rng.split(1);
  Rng gen_rng = rng.split(2);
  std::vector<UnitaryMatrix> states;
  if (cfg.init.kind == InitMode::Kind::Cluster) {
    states = sample_cluster(state_rng, cfg.d, n, cfg.init.center_seed, cfg.init.radius);
  } else {
    states.reserve(n);
    for (std::size_t j = 0; j < n; ++j) states.push_back(sample_haar(state_rng, cfg.d));
  }
  std::vector<Oscillator> out;
  out.reserve(n);
  const SkewHermitianMatrix shared = cfg.hamiltonian.kind == HamiltonianMode::Kind::Identical
                                         ? common_generator(cfg)
                                         : SkewHermitianMatrix::zero(cfg.d);
  for (std::size_t j = 0; j < n; ++j) {
    if (cfg.hamiltonian.kind == HamiltonianMode::Kind::Gaussian) {
      out.emplace_back(std::move(states[j]), sample_gaussian_su(gen_rng, cfg.d, cfg.hamiltonian.sigma));
    } else {
      out.emplace_back(std::move(states[j]), shared);
    }
  }
  return out;
}

// --- reports ----------------------------------------------------------------

CsvReport to_csv(const DiagnosticSeries& s) {
  std::vector<std::string> header{"t"};
  for (const auto& name : s.names()) header.push_back(name);
  CsvReport r(header);
  for (std::size_t k = 0; k < s.size(); ++k) {
    std::vector<CsvCell> row{s.times()[k]};
    for (const auto& name : s.names()) row.emplace_back(s.column(name)[k]);
    r.add_row(std::move(row));
  }
  return r;
}

CsvReport to_csv(const FieldTrajectory& f) {
  std::vector<std::string> header{"t"};
  for (int i = 0; i < f.d; ++i) {
    for (int j = 0; j < f.d; ++j) {
      const std::string ij = std::to_string(i) + std::to_string(j);
      header.push_back("re_" + ij);
      header.push_back("im_" + ij);
    }
  }
  CsvReport r(header);
  for (std::size_t k = 0; k < f.means.size(); ++k) {
    std::vector<CsvCell> row{f.times[k]};
    for (int i = 0; i < f.d; ++i) {
      for (int j = 0; j < f.d; ++j) {
        row.emplace_back(f.means[k](i, j).real());
        row.emplace_back(f.means[k](i, j).imag());
      }
    }
    r.add_row(std::move(row));
  }
  return r;
}

DiagnosticSeries synchronization_series(const Trajectory& traj) {
  std::vector<double> d, lambda;
  d.reserve(traj.size());
  lambda.reserve(traj.size());
  for (const auto& e : traj.snapshots) {
    d.push_back(diameter(e.oscillators()));
    lambda.push_back(lambda_functional(e.oscillators()));
  }
  DiagnosticSeries s(traj.times);
  s.set("D", std::move(d));
  s.set("Lambda", std::move(lambda));
  return s;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("loglog_slope: need >= 2 paired points");
  double sx = 0.0, sy = 0.0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw std::domain_error("loglog_slope: values must be positive");
    sx += std::log(x[i]);
    sy += std::log(y[i]);
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(y[i]) - my);
  }
  return sxy / sxx;
}

// --- simulate ---------------------------------------------------------------

ExperimentResult run_simulate(const ScenarioConfig& cfg, unsigned /*threads*/) {
  validate_config(cfg);
  Rng rng = stream(cfg.seed, kStreamSimulate);
  const Ensemble e0(sample_oscillators(cfg, cfg.n, rng), cfg.kappa);
  const Trajectory traj = integrate(e0, cfg.stepper(), lohe_generator_fn());
  DiagnosticSeries series = synchronization_series(traj);
  const auto& times = series.times();
  const auto& dcol = series.column("D");
  const double d0 = dcol.front();

  ExperimentResult result{CsvReport({"t"}), true, {}, {}};
  result.summary.emplace_back("D0", d0);

  const bool identical = cfg.hamiltonian.kind != HamiltonianMode::Kind::Gaussian;
  if (identical && cfg.kappa > 0.0 && d0 < std::sqrt(2.0)) {
    std::vector<double> lower, upper;
    for (std::size_t k = 0; k < times.size(); ++k) {
      const Envelope env = sync_envelopes(d0, cfg.kappa, times[k]);
      lower.push_back(env.lower);
      upper.push_back(env.upper);
      const double d2 = dcol[k] * dcol[k];
      if (d2 < env.lower - kEnvelopeSlack) record_failure(result, describe("D^2 below lower envelope", times[k], d2, env.lower));
      if (d2 > env.upper + kEnvelopeSlack) record_failure(result, describe("D^2 above upper envelope", times[k], d2, env.upper));
    }
    series.set("env_lower", std::move(lower));
    series.set("env_upper", std::move(upper));
  }

  if (!identical && cfg.kappa > 0.0) {
    const double alpha = frequency_spread(e0.oscillators());
    result.summary.emplace_back("alpha", alpha);
    const double eta = alpha / cfg.kappa;
    if (eta < eta_max() && d0 < zeta_roots(eta).zeta2) {
      const BarrierSolution bar = barrier_ode(alpha, cfg.kappa, d0, times);
      const double pivot = std::sqrt(2.0 / 3.0);
      for (std::size_t k = 0; k < times.size(); ++k) {
        if (dcol[k] > bar.y[k] + kBarrierSlack) record_failure(result, describe("D above barrier y", times[k], dcol[k], bar.y[k]));
        if (bar.first_crossing && times[k] >= *bar.first_crossing && dcol[k] > pivot + kBarrierSlack) {
          record_failure(result, describe("D above sqrt(2/3) after crossing", times[k], dcol[k], pivot));
        }
      }
      if (bar.first_crossing) result.summary.emplace_back("first_crossing", *bar.first_crossing);
      series.set("barrier_y", bar.y);
    }
  }
  result.report = to_csv(series);
  return result;
}

// --- converge ---------------------------------------------------------------

ExperimentResult run_converge(const ScenarioConfig& cfg, unsigned threads) {
  validate_config(cfg);
  const std::size_t n_max = cfg.n_list.back();
  if (cfg.p_reference < 8 * n_max) {
    throw ConfigError("config.p_reference: must be >= 8 * max(n_list) = " + std::to_string(8 * n_max));
  }
  const StepperConfig stepper = cfg.stepper();

  Rng ref_rng = stream(cfg.seed, kStreamReference);
  const Ensemble reference(sample_oscillators(cfg, cfg.p_reference, ref_rng), cfg.kappa);
  const FieldTrajectory field = reference_field(reference, stepper).field;

  struct Realization {
    std::vector<double> times, jn, mk2;
  };
  const std::size_t reps = cfg.repetitions;
  const std::size_t jobs = cfg.n_list.size() * reps;
  std::vector<Realization> runs(jobs);
  parallel_for(jobs, threads, [&](std::size_t job) {
    const std::size_t n = cfg.n_list[job / reps];
    const std::size_t rep = job % reps;
    Rng rng = stream(cfg.seed, kStreamCoupled).split(n).split(rep);
    const CoupledRun run = run_coupled(sample_oscillators(cfg, n, rng), field, stepper);
    const DiagnosticSeries jn = jn_series(run);
    Realization& out = runs[job];
    out.times = jn.times();
    out.jn = jn.column("JN");
    for (std::size_t k = 0; k < out.times.size(); ++k) {
      const auto cost = build_cost_matrix(run.characteristic.snapshots[k].oscillators(),
                                          run.interacting.snapshots[k].oscillators(), CostExponent::Two);
      out.mk2.push_back(assignment_solve(cost).total_cost / static_cast<double>(n));
    }
  });

  ExperimentResult result{CsvReport({"N", "t", "JN_mean", "thm31_bound", "mk2_sq"}), true, {}, {}};
  std::vector<double> ns, final_jn;
  for (std::size_t ni = 0; ni < cfg.n_list.size(); ++ni) {
    const std::size_t n = cfg.n_list[ni];
    const auto& grid = runs[ni * reps].times;
    for (std::size_t k = 0; k < grid.size(); ++k) {
      double jn_sum = 0.0, mk_sum = 0.0;
      const double bound = mean_field_bound(cfg.d, n, grid[k]);
      for (std::size_t r = 0; r < reps; ++r) {
        const Realization& run = runs[ni * reps + r];
        jn_sum += run.jn[k];
        mk_sum += run.mk2[k];
        if (run.jn[k] > bound) {
          record_failure(result, describe(("J_N above mean-field bound, N=" + std::to_string(n)).c_str(), grid[k], run.jn[k], bound));
        }
        if (run.mk2[k] > run.jn[k] + kTransportSlack) {
          record_failure(result, describe(("MK2^2 above J_N, N=" + std::to_string(n)).c_str(), grid[k], run.mk2[k], run.jn[k]));
        }
      }
      const double jn_mean = jn_sum / static_cast<double>(reps);
      result.report.add_row({static_cast<std::int64_t>(n), grid[k], jn_mean, bound, mk_sum / static_cast<double>(reps)});
      if (k + 1 == grid.size()) {
        ns.push_back(static_cast<double>(n));
        final_jn.push_back(jn_mean);
      }
    }
  }
  if (ns.size() >= 2 && std::all_of(final_jn.begin(), final_jn.end(), [](double v) { return v > 0.0; })) {
    result.summary.emplace_back("jn_slope", loglog_slope(ns, final_jn));
  }
  return result;
}

// --- practical synchronization ------------------------------------------------

namespace {

double barrier_horizon(double alpha, double kappa, double d0) {
  if (d0 <= std::sqrt(2.0 / 3.0)) return 0.0;
  // y decreases monotonically towards ζ1 < √(2/3); widen the window until it crosses.
  for (double horizon = 1.0; horizon < 1e6; horizon *= 2.0) {
    const auto steps = static_cast<std::size_t>(std::ceil(horizon / 1e-3));
    std::vector<double> grid(steps + 1);
    for (std::size_t k = 0; k <= steps; ++k) grid[k] = horizon * static_cast<double>(k) / static_cast<double>(steps);
    const BarrierSolution bar = barrier_ode(alpha, kappa, d0, grid);
    if (bar.first_crossing) return *bar.first_crossing;
  }
  throw NumericError("barrier_horizon: barrier solution never crossed sqrt(2/3)");
}

}  // namespace

ExperimentResult run_practical_sync(const ScenarioConfig& cfg, unsigned threads) {
  validate_config(cfg);
  Rng rng = stream(cfg.seed, kStreamPractical);
  const std::vector<Oscillator> initial = sample_oscillators(cfg, cfg.n, rng);
  const double alpha = frequency_spread(initial);
  const double d0 = diameter(initial);
  if (!(alpha > 0.0)) {
    throw RegimeError("practical-sync: frequency spread alpha is 0; use gaussian hamiltonian_mode");
  }
  const double threshold = std::pow(1.5, 1.5) * alpha;
  std::vector<double> horizons;
  for (std::size_t i = 0; i < cfg.kappa_list.size(); ++i) {
    const double kappa = cfg.kappa_list[i];
    std::ostringstream where;
    where.precision(17);
    where << "config.kappa_list[" << i << "] = " << kappa;
    if (!(kappa > threshold)) {
      std::ostringstream os;
      os.precision(17);
      os << where.str() << ": need kappa > (3/2)^{3/2} alpha = " << threshold;
      throw RegimeError(os.str());
    }
    const double zeta2 = zeta_roots(alpha / kappa).zeta2;
    if (!(d0 < zeta2)) {
      std::ostringstream os;
      os.precision(17);
      os << where.str() << ": realized D(0) = " << d0 << " is not below zeta2(alpha/kappa) = " << zeta2;
      throw RegimeError(os.str());
    }
    horizons.push_back(std::max(cfg.t_end, 5.0 * barrier_horizon(alpha, kappa, d0)));
  }

  const std::size_t count = cfg.kappa_list.size();
  std::vector<double> lambda_final(count);
  parallel_for(count, threads, [&](std::size_t i) {
    StepperConfig stepper = cfg.stepper();
    stepper.t_end = horizons[i];
    stepper.record_every = stepper.steps();
    const Trajectory traj = integrate(Ensemble(initial, cfg.kappa_list[i]), stepper, lohe_generator_fn());
    lambda_final[i] = lambda_functional(traj.back().oscillators());
  });

  ExperimentResult result{
      CsvReport({"kappa", "alpha", "lambda_final", "sqrt_lambda_final", "limit_3a_over_2k"}), true, {}, {}};
  result.summary.emplace_back("alpha", alpha);
  result.summary.emplace_back("D0", d0);
  for (std::size_t i = 0; i < count; ++i) {
    const double kappa = cfg.kappa_list[i];
    const double limit = practical_sync_limit(alpha, kappa);
    const double root = std::sqrt(lambda_final[i]);
    result.report.add_row({kappa, alpha, lambda_final[i], root, limit});
    if (root > limit + 0.05 * alpha / kappa) {
      record_failure(result, describe("sqrt(Lambda) above 3 alpha/(2 kappa)", horizons[i], root, limit));
    }
    if (i > 0 && kappa > cfg.kappa_list[i - 1] && !(root < std::sqrt(lambda_final[i - 1]))) {
      record_failure(result, describe("sqrt(Lambda) not decreasing in kappa", horizons[i], root,
                                      std::sqrt(lambda_final[i - 1])));
    }
    result.summary.emplace_back("t_end[" + std::to_string(i) + "]", horizons[i]);
  }
  return result;
}

// --- reductions ----------------------------------------------------------------

double kuramoto_equivalence_error(std::size_t n, double kappa, double t_end, double dt, std::uint64_t seed) {
  Rng rng(seed);
  KuramotoState s;
  s.kappa = kappa;
  for (std::size_t j = 0; j < n; ++j) {
    s.thetas.push_back(principal_angle(2.0 * std::numbers::pi * rng.uniform()));
    s.nus.push_back(rng.normal());
  }
  StepperConfig cfg;
  cfg.dt = dt;
  cfg.t_end = t_end;
  cfg.record_every = 1;
  const Trajectory lohe_run = integrate(from_kuramoto(s), cfg, lohe_generator_fn());

  std::vector<double> theta = s.thetas;
  double worst = 0.0;
  for (std::size_t k = 0; k < lohe_run.size(); ++k) {
    if (k > 0) {
      const double h = lohe_run.times[k] - lohe_run.times[k - 1];
      KuramotoState cur{theta, s.nus, kappa};
      const auto f0 = kuramoto_rhs(cur);
      KuramotoState half = cur;
      for (std::size_t j = 0; j < n; ++j) half.thetas[j] += 0.5 * h * f0[j];
      const auto f1 = kuramoto_rhs(half);
      for (std::size_t j = 0; j < n; ++j) theta[j] += h * f1[j];
    }
    const KuramotoState got = to_kuramoto(lohe_run.snapshots[k]);
    for (std::size_t j = 0; j < n; ++j) {
      worst = std::max(worst, std::abs(principal_angle(got.thetas[j] - theta[j])));
    }
  }
  return worst;
}

namespace {

SwarmState random_swarm(std::size_t n, double kappa, Rng& rng, bool phases) {
  SwarmState s;
  s.kappa = kappa;
  for (std::size_t j = 0; j < n; ++j) {
    const UnitaryMatrix u = sample_haar(rng, 2);
    const PauliCoordinates pc = pauli_decompose(u);
    s.xs.push_back(pc.x);
    const ComplexMatrix h = Complex(0.0, 1.0) * sample_gaussian_su(rng, 2).matrix();
    s.omegas.push_back(omega_from_hamiltonian(h));
    s.thetas.push_back(phases ? pc.theta : 0.0);
    s.nus.push_back(phases ? rng.normal() : 0.0);
  }
  return s;
}

SwarmState advance_swarm(const SwarmState& s, const SwarmVelocity& v, double h) {
  SwarmState out = s;
  for (std::size_t j = 0; j < s.xs.size(); ++j) {
    out.xs[j] += h * v.x_dot[j];
    out.thetas[j] += h * v.theta_dot[j];
  }
  return out;
}

SwarmState rk4_swarm(const SwarmState& s, double h) {
  const SwarmVelocity k1 = swarming_rhs(s);
  const SwarmVelocity k2 = swarming_rhs(advance_swarm(s, k1, 0.5 * h));
  const SwarmVelocity k3 = swarming_rhs(advance_swarm(s, k2, 0.5 * h));
  const SwarmVelocity k4 = swarming_rhs(advance_swarm(s, k3, h));
  SwarmState out = s;
  for (std::size_t j = 0; j < s.xs.size(); ++j) {
    out.xs[j] += h / 6.0 * (k1.x_dot[j] + 2.0 * k2.x_dot[j] + 2.0 * k3.x_dot[j] + k4.x_dot[j]);
    out.thetas[j] += h / 6.0 * (k1.theta_dot[j] + 2.0 * k2.theta_dot[j] + 2.0 * k3.theta_dot[j] + k4.theta_dot[j]);
  }
  return out;
}

}  // namespace

double swarming_norm_error(std::size_t n, double kappa, double t_end, double dt, std::uint64_t seed) {
  Rng rng(seed);
  SwarmState s = random_swarm(n, kappa, rng, true);
  std::vector<double> norms0;
  for (const auto& x : s.xs) norms0.push_back(x.squaredNorm());
  StepperConfig grid;
  grid.dt = dt;
  grid.t_end = t_end;
  grid.validate();
  double worst = 0.0;
  for (std::size_t k = 0; k < grid.steps(); ++k) {
    s = rk4_swarm(s, grid.step_length(k));
    for (std::size_t j = 0; j < n; ++j) worst = std::max(worst, std::abs(s.xs[j].squaredNorm() - norms0[j]));
  }
  return worst;
}

double swarming_reduction_error(std::size_t n, double kappa, double dt, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Oscillator> osc;
  SwarmState s;
  s.kappa = kappa;
  for (std::size_t j = 0; j < n; ++j) {
    // Project onto SU(2) and drop the trace of H so that θ_j ≡ 0 and ν_j = 0.
    const UnitaryMatrix haar = sample_haar(rng, 2);
    const Complex det = haar.matrix().determinant();
    const UnitaryMatrix u = UnitaryMatrix::unchecked(haar.matrix() / std::sqrt(det));
    ComplexMatrix a = sample_gaussian_su(rng, 2).matrix();
    a -= (0.5 * a.trace()) * ComplexMatrix::Identity(2, 2);
    osc.emplace_back(u, SkewHermitianMatrix::unchecked(a));
    s.xs.push_back(pauli_linear_coordinates(u.matrix()));
    s.omegas.push_back(omega_from_hamiltonian(Complex(0.0, 1.0) * a));
    s.thetas.push_back(0.0);
    s.nus.push_back(0.0);
  }
  const Ensemble lohe_next = step(Ensemble(osc, kappa), dt, lohe_generator_fn(), Method::CF2);
  const SwarmState swarm_next = rk4_swarm(s, dt);
  double worst = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    worst = std::max(worst, (pauli_linear_coordinates(lohe_next[j].u.matrix()) - swarm_next.xs[j]).norm());
  }
  return worst;
}

namespace {

Ensemble identical_ensemble(int d, std::size_t n, double kappa, double sigma, Rng& rng) {
  const SkewHermitianMatrix a = sample_gaussian_su(rng, d, sigma);
  std::vector<Oscillator> osc;
  for (std::size_t j = 0; j < n; ++j) osc.emplace_back(sample_haar(rng, d), a);
  return Ensemble(std::move(osc), kappa);
}

}  // namespace

double splitting_error(int d, std::size_t n, double kappa, double t_end, double dt, double sigma,
                       std::uint64_t seed) {
  Rng rng(seed);
  const Ensemble e0 = identical_ensemble(d, n, kappa, sigma, rng);
  StepperConfig cfg;
  cfg.dt = dt;
  cfg.t_end = t_end;
  cfg.record_every = cfg.steps();
  const Ensemble direct = integrate(e0, cfg, lohe_generator_fn()).back();
  const Ensemble split = split_integrate(e0, cfg);
  double worst = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    worst = std::max(worst, (direct[j].u.matrix() - split[j].u.matrix()).norm());
  }
  return worst;
}

double gauge_error(int d, std::size_t n, double kappa, double t_end, double dt, double sigma, std::uint64_t seed) {
  Rng rng(seed);
  const Ensemble e0 = identical_ensemble(d, n, kappa, sigma, rng);
  StepperConfig cfg;
  cfg.dt = dt;
  cfg.t_end = t_end;
  cfg.record_every = std::max<std::size_t>(1, cfg.steps() / 10);
  const Trajectory rotated = gauge_transform(integrate(e0, cfg, lohe_generator_fn()), e0[0].a);
  const Trajectory plain = integrate(e0.with_generators(SkewHermitianMatrix::zero(d)), cfg, lohe_generator_fn());
  double worst = 0.0;
  for (std::size_t k = 0; k < plain.size(); ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      worst = std::max(worst, (rotated.snapshots[k][j].u.matrix() - plain.snapshots[k][j].u.matrix()).norm());
    }
  }
  return worst;
}

ExperimentResult run_reduction_checks(const ScenarioConfig& cfg) {
  validate_config(cfg);
  const int d = std::max(cfg.d, 2);
  const double sigma = cfg.hamiltonian.sigma;
  struct Check {
    const char* name;
    double error;
    double tolerance;
  };
  const std::vector<Check> checks{
      {"kuramoto_equivalence", kuramoto_equivalence_error(cfg.n, cfg.kappa, cfg.t_end, cfg.dt, cfg.seed), 1e-6},
      {"swarming_norm_conservation", swarming_norm_error(cfg.n, cfg.kappa, cfg.t_end, cfg.dt, cfg.seed), 1e-8},
      {"swarming_reduction", swarming_reduction_error(cfg.n, cfg.kappa, cfg.dt, cfg.seed), 1e-8},
      {"splitting", splitting_error(d, cfg.n, cfg.kappa, cfg.t_end, cfg.dt, sigma, cfg.seed), 1e-6},
      {"gauge", gauge_error(d, cfg.n, cfg.kappa, cfg.t_end, cfg.dt, sigma, cfg.seed), 1e-6},
  };
  ExperimentResult result{CsvReport({"check_name", "max_error", "tolerance", "pass"}), true, {}, {}};
  for (const auto& c : checks) {
    const bool pass = c.error <= c.tolerance;
    result.report.add_row({std::string(c.name), c.error, c.tolerance, std::string(pass ? "true" : "false")});
    if (!pass) record_failure(result, std::string(c.name) + ": max error " + format_double(c.error));
  }
  return result;
}

// --- field fluctuation ------------------------------------------------------

ExperimentResult run_field_fluctuation(const ScenarioConfig& cfg, unsigned threads) {
  validate_config(cfg);
  std::vector<FluctuationEstimate> est(cfg.n_list.size());
  parallel_for(est.size(), threads, [&](std::size_t i) {
    const std::size_t n = cfg.n_list[i];
    Rng rng = stream(cfg.seed, kStreamFluctuation).split(static_cast<std::uint64_t>(cfg.d)).split(n);
    est[i] = field_fluctuation_bound_check(rng, cfg.d, n, cfg.samples);
  });
  ExperimentResult result{
      CsvReport({"d", "N", "estimate", "standard_error", "bound", "exact", "max_v_norm"}), true, {}, {}};
  const double v_cap = 4.0 * std::sqrt(static_cast<double>(cfg.d));
  std::vector<double> ns, values;
  for (std::size_t i = 0; i < est.size(); ++i) {
    const auto& e = est[i];
    const auto n = static_cast<std::int64_t>(cfg.n_list[i]);
    result.report.add_row({static_cast<std::int64_t>(cfg.d), n, e.estimate, e.standard_error, e.bound, e.exact,
                           e.max_v_norm});
    if (e.estimate > e.bound + 3.0 * e.standard_error) {
      record_failure(result, "estimate above 16d/N for N=" + std::to_string(n));
    }
    if (e.max_v_norm > v_cap * (1.0 + 1e-12)) {
      record_failure(result, "|V| above 4 sqrt(d) for N=" + std::to_string(n));
    }
    if (e.estimate > 0.0) {
      ns.push_back(static_cast<double>(n));
      values.push_back(e.estimate);
    }
  }
  if (ns.size() >= 2) result.summary.emplace_back("slope", loglog_slope(ns, values));
  return result;
}

}  // namespace lohe
