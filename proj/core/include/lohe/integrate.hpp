#pragma once

// Fixed-step Lie-group integrators for dU_j/dt = 𝒜_j U_j.
//
//   LieEuler: U ← exp(h 𝒜(U)) U
//   CF2:      U½ ← exp(h/2 𝒜(U)) U,  U ← exp(h 𝒜(U½)) U   (exponential midpoint)
//
// Every update is a left multiplication by an exponential of a skew-Hermitian
// matrix, so states stay on U(d) up to roundoff.

#include <cstddef>
#include <functional>
#include <vector>

#include "lohe/model.hpp"

namespace lohe {

enum class Method { LieEuler, CF2 };

/// Number of generator evaluations per step.
int stages(Method m) noexcept;

const char* to_string(Method m) noexcept;

struct StepperConfig {
  Method method = Method::CF2;
  double dt = 1e-3;
  double t_end = 1.0;
  std::size_t record_every = 1;
  std::size_t retract_every = 64;

  /// Throws std::invalid_argument on a non-positive dt/t_end, dt > t_end, or
  /// zero record/retract intervals.
  void validate() const;

  /// Number of steps; the last one is shortened if t_end is not a multiple of dt.
  std::size_t steps() const;

  /// Start time of step k.
  double time_of_step(std::size_t k) const;

  /// Length of step k.
  double step_length(std::size_t k) const;
};

/// Identifies one generator evaluation inside a run.
struct StageInfo {
  std::size_t step = 0;
  int stage = 0;
  double time = 0.0;
};

/// Maps an ensemble (at a given stage of a given step) to one generator per
/// oscillator.
using GeneratorFn =
    std::function<std::vector<SkewHermitianMatrix>(const Ensemble&, const StageInfo&)>;

/// The interacting Lohe generators; ignores the stage.
GeneratorFn lohe_generator_fn();

/// One step of length `dt` (negative values integrate backwards). Generators
/// are left untouched.
Ensemble step(const Ensemble& e, double dt, const GeneratorFn& generators,
              Method method = Method::CF2, std::size_t step_index = 0, double t = 0.0);

struct Trajectory {
  std::vector<double> times;
  std::vector<Ensemble> snapshots;

  std::size_t size() const noexcept { return times.size(); }
  const Ensemble& back() const { return snapshots.back(); }
};

/// Drift that aborts a run; below it states are repaired by polar retraction.
inline constexpr double kDriftAbortTolerance = 1e-6;

/// Integrates from t = 0 to cfg.t_end. Snapshots are taken at t = 0, every
/// cfg.record_every steps and at t_end. States are retracted onto U(d) every
/// cfg.retract_every steps; a unitarity defect above kDriftAbortTolerance
/// throws NumericError.
Trajectory integrate(const Ensemble& e0, const StepperConfig& cfg, const GeneratorFn& generators);

/// Integrates an identical-Hamiltonian ensemble by splitting: the H = 0
/// coupled system is integrated numerically and the common rotation
/// exp(t_end A) is applied exactly at the end. Throws std::invalid_argument
/// ("splitting requires equal Hamiltonians") if the generators differ.
Ensemble split_integrate(const Ensemble& e0, const StepperConfig& cfg);

/// Largest ‖U_j*U_j − I‖₂ over an ensemble.
double max_unitarity_defect(const Ensemble& e);

}  // namespace lohe
