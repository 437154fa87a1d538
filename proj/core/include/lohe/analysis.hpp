#pragma once

// Synchronization diagnostics and the closed-form curves they are compared
// against: support diameter, frequency spread, the Λ functional, the cubic
// ½z³ − z + η and its barrier ODE, the complete-synchronization envelopes and
// the mean-field error bound.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lohe/model.hpp"

namespace lohe {

/// Times plus named columns of equal length, in insertion order.
class DiagnosticSeries {
 public:
  DiagnosticSeries() = default;
  explicit DiagnosticSeries(std::vector<double> times);

  const std::vector<double>& times() const noexcept { return times_; }
  std::size_t size() const noexcept { return times_.size(); }

  /// Adds or replaces a column; throws std::invalid_argument on a length mismatch.
  void set(const std::string& name, std::vector<double> values);
  bool has(const std::string& name) const;
  const std::vector<double>& column(const std::string& name) const;
  const std::vector<std::string>& names() const noexcept { return names_; }

 private:
  std::vector<double> times_;
  std::vector<std::string> names_;
  std::vector<std::vector<double>> columns_;
};

/// max_{i,j} ‖U_i − U_j‖₂.
double diameter(std::span<const Oscillator> cloud);

/// max_{i,j} ‖A_i − A_j‖₂.
double frequency_spread(std::span<const Oscillator> cloud);

/// (1/N²) Σ_i Σ_j ‖U_i − U_j‖₂², diagonal included.
double lambda_functional(std::span<const Oscillator> cloud);

/// (2/3)^{3/2}, the largest η for which ½z³ − z + η has two nonnegative roots.
double eta_max();

struct CubicRoots {
  double eta = 0.0;
  double zeta1 = 0.0;
  double zeta2 = 0.0;
};

/// Nonnegative roots of ½z³ − z + η for η ∈ [0, (2/3)^{3/2}). Throws
/// std::domain_error("no two nonnegative roots") outside that range.
CubicRoots zeta_roots(double eta);

struct BarrierSolution {
  std::vector<double> times;
  std::vector<double> y;
  /// First grid time with y ≤ √(2/3).
  std::optional<double> first_crossing;
};

/// RK4 solution of ẏ = α − κy + ½κy³, y(0) = y0, sampled on `t_grid`
/// (t_grid[0] = 0, increasing). Substeps are at most 1e-3 long. Throws
/// std::domain_error("outside barrier regime") unless κ > 0, α ≥ 0,
/// α/κ < (2/3)^{3/2} and 0 ≤ y0 < ζ2(α/κ).
BarrierSolution barrier_ode(double alpha, double kappa, double y0, std::span<const double> t_grid);

struct Envelope {
  double lower = 0.0;
  double upper = 0.0;
};

/// Lower and upper bounds on D(t)² for identical Hamiltonians:
///   D0² e^{−2κt}(1 − ½D0²(1 − e^{−2κt})) ≤ D(t)² ≤ 2D0²/((2 − D0²)e^{2κt} + D0²).
/// Throws std::domain_error("outside small-support regime") if d0 ≥ √2.
Envelope sync_envelopes(double d0, double kappa, double t);

/// (8d/5n)(e^{10t} − 1).
double mean_field_bound(int d, std::size_t n, double t);

/// 3α/(2κ); requires κ > (3/2)^{3/2}α > 0, otherwise std::domain_error.
double practical_sync_limit(double alpha, double kappa);

struct AuxIdentity {
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
};

/// Both sides of the trace identity
///   tr((U₁−U₂)*(U₂⟨V*⟩U₂ − U₁⟨V*⟩U₁)) + tr((U₂*⟨V⟩U₂* − U₁*⟨V⟩U₁*)(U₁−U₂))
///   = −4‖U₁−U₂‖₂² + tr(⟨(V−U₂)(V−U₂)*⟩ΔΔ*) + tr(⟨(V−U₁)(V−U₁)*⟩ΔΔ*),
/// Δ = U₁ − U₂, with ⟨·⟩ the empirical mean over `cloud`. The version with
/// −2‖Δ‖₂² and weights ½ on the right equals half of the left side.
AuxIdentity aux_identity_check(const UnitaryMatrix& u1, const UnitaryMatrix& u2,
                               std::span<const Oscillator> cloud);

}  // namespace lohe
