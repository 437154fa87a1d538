#pragma once

// Right-hand sides of the Lohe matrix model
//
//   dU_j/dt = 𝒜_j U_j,   𝒜_j = A_j + (κ/2N) Σ_k K(U_k, U_j),
//
// its frozen-field (kinetic characteristic) counterpart, and the d = 1
// (Kuramoto) and d = 2 (swarming on S³) reductions.

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "lohe/matcore.hpp"

namespace lohe {

/// One oscillator: state U ∈ U(d) and constant generator A = −iH ∈ u(d).
struct Oscillator {
  UnitaryMatrix u;
  SkewHermitianMatrix a;

  Oscillator(UnitaryMatrix u_, SkewHermitianMatrix a_);
  int dim() const noexcept { return u.dim(); }
};

/// N oscillators sharing one dimension, plus the coupling strength κ ≥ 0.
class Ensemble {
 public:
  Ensemble(std::vector<Oscillator> oscillators, double kappa);

  std::size_t size() const noexcept { return oscillators_.size(); }
  int dim() const noexcept { return oscillators_.front().dim(); }
  double kappa() const noexcept { return kappa_; }

  const std::vector<Oscillator>& oscillators() const noexcept { return oscillators_; }
  const Oscillator& operator[](std::size_t j) const { return oscillators_[j]; }

  /// Copy with the states replaced and generators kept.
  Ensemble with_states(std::vector<UnitaryMatrix> states) const;

  /// Copy with every generator replaced by `a`.
  Ensemble with_generators(const SkewHermitianMatrix& a) const;

 private:
  std::vector<Oscillator> oscillators_;
  double kappa_;
};

/// ⟨U⟩ = (1/N) Σ U_k, summed left to right.
ComplexMatrix centroid(std::span<const Oscillator> oscillators);

/// A + (κ/2)(⟨V⟩U* − U⟨V⟩*).
SkewHermitianMatrix frozen_field_generator(const Oscillator& osc, const ComplexMatrix& field_mean,
                                           double kappa);

/// 𝒜_j for every oscillator, evaluated through the centroid in O(N d³).
std::vector<SkewHermitianMatrix> lohe_generators(const Ensemble& e);

// --- d = 1 --------------------------------------------------------------

struct KuramotoState {
  std::vector<double> thetas;
  std::vector<double> nus;
  double kappa = 0.0;
};

/// θ̇_j = ν_j + (κ/N) Σ_k sin(θ_k − θ_j).
std::vector<double> kuramoto_rhs(const KuramotoState& s);

/// Reads U_j = e^{−iθ_j}, A_j = −iν_j off a d = 1 ensemble.
KuramotoState to_kuramoto(const Ensemble& e);

/// Builds the d = 1 ensemble U_j = e^{−iθ_j}, A_j = −iν_j.
Ensemble from_kuramoto(const KuramotoState& s);

/// Phase velocities implied by the d = 1 Lohe generators: θ̇_j = −Im 𝒜_j.
std::vector<double> lohe_d1_phase(const Ensemble& e);

/// Principal argument in (−π, π].
double principal_angle(double angle);

// --- d = 2 --------------------------------------------------------------

struct SwarmState {
  std::vector<Eigen::Vector4d> xs;
  std::vector<Eigen::Matrix4d> omegas;
  std::vector<double> thetas;
  std::vector<double> nus;
  double kappa = 0.0;
};

struct SwarmVelocity {
  std::vector<Eigen::Vector4d> x_dot;
  std::vector<double> theta_dot;
};

/// The 5N-equation system for (θ_j, x_j):
///   ‖x_j‖²θ̇_j = ν_j + (κ/N) Σ sin(θ_k − θ_j)⟨x_j|x_k⟩
///   ‖x_j‖²ẋ_j = Ω_j x_j + (κ/N) Σ cos(θ_k − θ_j)(‖x_j‖²x_k − ⟨x_j|x_k⟩x_j)
SwarmVelocity swarming_rhs(const SwarmState& s);

/// U = e^{−iθ}(i Σ x^k σ_k + x⁴ I₂) with σ₁ = diag(1, −1), σ₂ = [[0, −i], [i, 0]],
/// σ₃ = [[0, 1], [1, 0]].
struct PauliCoordinates {
  double theta = 0.0;
  Eigen::Vector4d x = Eigen::Vector4d::Zero();
};

/// θ from det U = e^{−2iθ}, taken in [−π/2, π/2]; when |θ| = π/2 the
/// representative with x⁴ ≥ 0 is returned.
PauliCoordinates pauli_decompose(const UnitaryMatrix& u);

ComplexMatrix pauli_compose(double theta, const Eigen::Vector4d& x);

/// Linear coordinates of a matrix of the form i Σ x^k σ_k + x⁴ I₂ (θ = 0).
Eigen::Vector4d pauli_linear_coordinates(const ComplexMatrix& m);

/// Ω such that −iH·M(x) = M(Ωx) for the traceless part of a 2×2 Hermitian H.
Eigen::Matrix4d omega_from_hamiltonian(const ComplexMatrix& h);

}  // namespace lohe
