#pragma once

// End-to-end verification experiments. Each driver returns its CSV report
// and whether every bound or identity it checks held.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lohe/analysis.hpp"
#include "lohe/config.hpp"
#include "lohe/csv.hpp"
#include "lohe/meanfield.hpp"

namespace lohe {

struct ExperimentResult {
  CsvReport report;
  bool verified = true;
  /// One line per failed check.
  std::vector<std::string> failures;
  /// Scalar outcomes (fitted slopes, realized D(0), horizons), in order.
  std::vector<std::pair<std::string, double>> summary;

  double summary_value(const std::string& key) const;
};

/// Thrown for configurations outside the regime an experiment requires.
class RegimeError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

// --- sampling -------------------------------------------------------------

/// Common generator for identical-Hamiltonian scenarios; depends only on
/// cfg.seed, d and sigma.
SkewHermitianMatrix common_generator(const ScenarioConfig& cfg);

/// n oscillators drawn from the configured initial law. States and
/// generators are drawn from separate streams of `rng`.
std::vector<Oscillator> sample_oscillators(const ScenarioConfig& cfg, std::size_t n, Rng& rng);

/// U_j = exp(r ξ_j B_j/‖B_j‖₂) U_c with U_c Haar (seeded by center_seed),
/// B_j Gaussian in u(d) and ξ_j uniform on [0, 1].
std::vector<UnitaryMatrix> sample_cluster(Rng& rng, int d, std::size_t n, std::uint64_t center_seed,
                                          double radius);

// --- reports ----------------------------------------------------------------

/// "t" followed by the series columns.
CsvReport to_csv(const DiagnosticSeries& s);

/// One row per stage time: t, then re/im of each entry in row-major order.
CsvReport to_csv(const FieldTrajectory& f);

/// D(t) and Λ(t) over a trajectory.
DiagnosticSeries synchronization_series(const Trajectory& traj);

/// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

// --- drivers ----------------------------------------------------------------

/// Columns t, D, Lambda; plus env_lower/env_upper (D² envelopes) for zero or
/// identical Hamiltonians with κ > 0 and D(0) < √2, plus barrier_y for
/// Gaussian Hamiltonians inside the barrier regime.
ExperimentResult run_simulate(const ScenarioConfig& cfg, unsigned threads = 1);

/// Columns N, t, JN_mean, thm31_bound, mk2_sq. One shared P-particle
/// reference field; per N, `repetitions` independent coupled runs.
ExperimentResult run_converge(const ScenarioConfig& cfg, unsigned threads = 1);

/// Columns kappa, alpha, lambda_final, sqrt_lambda_final, limit_3a_over_2k.
/// Throws RegimeError before integrating if some κ violates
/// κ > (3/2)^{3/2}α or D(0) < ζ2(α/κ).
ExperimentResult run_practical_sync(const ScenarioConfig& cfg, unsigned threads = 1);

/// Columns check_name, max_error, tolerance, pass.
ExperimentResult run_reduction_checks(const ScenarioConfig& cfg);

/// Columns d, N, estimate, standard_error, bound, exact, max_v_norm.
ExperimentResult run_field_fluctuation(const ScenarioConfig& cfg, unsigned threads = 1);

// --- individual cross-checks -----------------------------------------------

/// Sup over time and oscillators of the phase gap between a d = 1 Lohe run and
/// the Kuramoto system integrated with the explicit midpoint rule.
double kuramoto_equivalence_error(std::size_t n, double kappa, double t_end, double dt, std::uint64_t seed);

/// Largest |‖x_j(t)‖² − ‖x_j(0)‖²| along an RK4 run of the swarming system.
double swarming_norm_error(std::size_t n, double kappa, double t_end, double dt, std::uint64_t seed);

/// Largest gap in x after one step of size dt: the Lohe CF2 step mapped to
/// Pauli coordinates against an RK4 step of the swarming system (θ = ν = 0).
double swarming_reduction_error(std::size_t n, double kappa, double dt, std::uint64_t seed);

/// Largest ‖split − direct‖₂ for an identical-Hamiltonian ensemble.
double splitting_error(int d, std::size_t n, double kappa, double t_end, double dt, double sigma,
                       std::uint64_t seed);

/// Largest gap between a gauge-transformed identical-H run and a direct H = 0
/// run, over recorded times and oscillators.
double gauge_error(int d, std::size_t n, double kappa, double t_end, double dt, double sigma,
                   std::uint64_t seed);

}  // namespace lohe
