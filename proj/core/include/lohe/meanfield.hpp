#pragma once

// Particle approximation of the kinetic Lohe equation. A P-particle run
// records the centroid ⟨U⟩ at every generator evaluation; characteristics
// are then integrated under that frozen field on the same time grid, which
// makes the comparison with an N-particle interacting run free of
// interpolation error.

#include <cstddef>
#include <vector>

#include "lohe/analysis.hpp"
#include "lohe/integrate.hpp"
#include "lohe/rng.hpp"

namespace lohe {

/// Centroids of a reference run, one per stage evaluation.
///
/// means[k·stages(method) + s] is the centroid seen by stage s of step k and
/// times[] holds the matching evaluation times. The last entry is the
/// centroid at t_end.
struct FieldTrajectory {
  Method method = Method::CF2;
  double dt = 0.0;
  double t_end = 0.0;
  double kappa = 0.0;
  int d = 0;
  std::vector<double> times;
  std::vector<ComplexMatrix> means;

  /// Throws NumericError if some ‖means[k]‖ exceeds 1 + 1e-10.
  void validate() const;
};

struct ReferenceRun {
  FieldTrajectory field;
  Trajectory trajectory;
};

/// Integrates the P-particle Lohe system and records its centroid at every
/// generator evaluation.
ReferenceRun reference_field(const Ensemble& e0_p, const StepperConfig& cfg);

/// Integrates each oscillator under A + (κ/2)(⟨V⟩U* − U⟨V⟩*) with ⟨V⟩ read
/// from `field`. The stepper configuration must reproduce the field's grid
/// (same method, dt and t_end); otherwise std::invalid_argument("grid mismatch").
Trajectory flow_characteristics(const std::vector<Oscillator>& initials, const FieldTrajectory& field,
                                const StepperConfig& cfg);

/// An interacting run and a characteristic run started from the same points.
struct CoupledRun {
  Trajectory interacting;
  Trajectory characteristic;
};

CoupledRun run_coupled(const std::vector<Oscillator>& initials, const FieldTrajectory& field,
                       const StepperConfig& cfg);

/// J_N(t_k) = (1/N) Σ_j (‖U_j − V_j‖₂² + ‖A_j − B_j‖₂²), column "JN".
DiagnosticSeries jn_series(const CoupledRun& run);

/// U_j(t_k) ↦ exp(−t_k a0) U_j(t_k) and A_j ↦ 0. Throws std::invalid_argument
/// if some oscillator carries a generator other than a0.
Trajectory gauge_transform(const Trajectory& traj, const SkewHermitianMatrix& a0);

struct FluctuationEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
  /// 16d/N.
  double bound = 0.0;
  /// 2d(N − 1)/N², the exact expectation for Haar samples.
  double exact = 0.0;
  /// Largest ‖𝒱(U_k)‖₂ seen; never above 4√d.
  double max_v_norm = 0.0;
  std::size_t samples = 0;
};

/// Monte-Carlo estimate of E‖(1/N) Σ_k 𝒱(U_k)‖₂² for i.i.d. Haar U_k, where
/// 𝒱(U_k) = ∫ K(Û, U₁) ρ(dÛ) − K(U_k, U₁). The Haar mean of Û is zero, so
/// the integral term vanishes identically.
FluctuationEstimate field_fluctuation_bound_check(Rng& rng, int d, std::size_t n, std::size_t samples);

}  // namespace lohe
