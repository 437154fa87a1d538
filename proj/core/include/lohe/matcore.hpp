#pragma once

// Small dense complex matrices: norms, the exponential of skew-Hermitian
// generators, polar retraction onto U(d), and samplers for Haar unitaries and
// Gaussian skew-Hermitian matrices.

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace lohe {

class Rng;

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

/// Raised when a decomposition fails or a state leaves its manifold.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when operands of different matrix dimension are combined.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Acceptance tolerance for ‖U*U − I‖₂ when wrapping an existing matrix.
inline constexpr double kUnitaryTolerance = 1e-8;
/// Tolerance met by freshly sampled or retracted unitaries.
inline constexpr double kFreshUnitaryTolerance = 1e-12;
/// Acceptance tolerance for ‖A + A*‖₂.
inline constexpr double kSkewTolerance = 1e-12;

double frobenius_norm(const ComplexMatrix& m);

/// Largest singular value.
double operator_norm(const ComplexMatrix& m);

/// ‖M*M − I‖₂.
double unitarity_defect(const ComplexMatrix& m);

/// ‖M + M*‖₂.
double skew_defect(const ComplexMatrix& m);

/// trace(A*B), the Frobenius inner product.
Complex frobenius_inner(const ComplexMatrix& a, const ComplexMatrix& b);

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* what);

/// A d×d matrix known to satisfy U*U = I to within kUnitaryTolerance.
class UnitaryMatrix {
 public:
  /// Validates squareness and unitarity; throws NumericError otherwise.
  explicit UnitaryMatrix(ComplexMatrix m, double tolerance = kUnitaryTolerance);

  static UnitaryMatrix identity(int d);

  /// Wraps a matrix that is unitary by construction (a product of unitaries,
  /// an exponential of a skew-Hermitian matrix). No check is made.
  static UnitaryMatrix unchecked(ComplexMatrix m);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  int dim() const noexcept { return static_cast<int>(m_.rows()); }
  ComplexMatrix adjoint() const { return m_.adjoint(); }

  friend bool operator==(const UnitaryMatrix& a, const UnitaryMatrix& b) {
    return a.m_ == b.m_;
  }

 private:
  struct NoCheck {};
  UnitaryMatrix(NoCheck, ComplexMatrix m) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

/// A d×d matrix with A + A* = 0, i.e. an element of the Lie algebra u(d).
class SkewHermitianMatrix {
 public:
  explicit SkewHermitianMatrix(ComplexMatrix m, double tolerance = kSkewTolerance);

  static SkewHermitianMatrix zero(int d);

  /// Wraps a matrix that is skew-Hermitian by construction. No check is made.
  static SkewHermitianMatrix unchecked(ComplexMatrix m);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  int dim() const noexcept { return static_cast<int>(m_.rows()); }

  friend bool operator==(const SkewHermitianMatrix& a, const SkewHermitianMatrix& b) {
    return a.m_ == b.m_;
  }

 private:
  struct NoCheck {};
  SkewHermitianMatrix(NoCheck, ComplexMatrix m) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

/// exp(t·A) through the spectral decomposition of the Hermitian matrix iA.
UnitaryMatrix expm_skew(const SkewHermitianMatrix& a, double t);

/// Unitary polar factor Q of M = Q·P. Throws NumericError("no unique polar
/// factor") when M is singular.
UnitaryMatrix retract_unitary(const ComplexMatrix& m);

/// Haar-distributed U ∈ U(d): QR of a complex Ginibre matrix with the
/// diagonal of R rotated onto the positive reals.
UnitaryMatrix sample_haar(Rng& rng, int d);

/// Gaussian element of u(d). The real and imaginary parts of each strictly
/// lower entry and the imaginary part of each diagonal entry are i.i.d.
/// N(0, sigma²); the upper triangle follows from A = −A*.
SkewHermitianMatrix sample_gaussian_su(Rng& rng, int d, double sigma = 1.0);

/// K(U, V) = UV* − VU*.
SkewHermitianMatrix coupling_kernel(const UnitaryMatrix& u, const UnitaryMatrix& v);

/// S − S*, exactly skew-Hermitian in floating point.
ComplexMatrix skew_part_times_two(const ComplexMatrix& s);

}  // namespace lohe
