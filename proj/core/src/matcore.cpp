#include "lohe/matcore.hpp"

#include <cmath>
#include <sstream>

#include "lohe/rng.hpp"

namespace lohe {

namespace {

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() < 1 || m.rows() != m.cols()) {
    std::ostringstream os;
    os << what << ": expected a nonempty square matrix, got " << m.rows() << "x" << m.cols();
    throw DimensionError(os.str());
  }
}

}  // namespace

double frobenius_norm(const ComplexMatrix& m) { return m.norm(); }

double operator_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues()(0);
}

double unitarity_defect(const ComplexMatrix& m) {
  return (m.adjoint() * m - ComplexMatrix::Identity(m.cols(), m.cols())).norm();
}

double skew_defect(const ComplexMatrix& m) { return (m + m.adjoint()).norm(); }

Complex frobenius_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "frobenius_inner");
  return (a.adjoint() * b).trace();
}

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream os;
    os << what << ": dimension mismatch (" << a.rows() << "x" << a.cols() << " vs " << b.rows()
       << "x" << b.cols() << ")";
    throw DimensionError(os.str());
  }
}

UnitaryMatrix::UnitaryMatrix(ComplexMatrix m, double tolerance) : m_(std::move(m)) {
  require_square(m_, "UnitaryMatrix");
  const double defect = unitarity_defect(m_);
  if (!(defect <= tolerance)) {
    std::ostringstream os;
    os << "UnitaryMatrix: |U*U - I| = " << defect << " exceeds " << tolerance;
    throw NumericError(os.str());
  }
}

UnitaryMatrix UnitaryMatrix::identity(int d) {
  return UnitaryMatrix(NoCheck{}, ComplexMatrix::Identity(d, d));
}

UnitaryMatrix UnitaryMatrix::unchecked(ComplexMatrix m) { return UnitaryMatrix(NoCheck{}, std::move(m)); }

SkewHermitianMatrix::SkewHermitianMatrix(ComplexMatrix m, double tolerance) : m_(std::move(m)) {
  require_square(m_, "SkewHermitianMatrix");
  const double defect = skew_defect(m_);
  if (!(defect <= tolerance)) {
    std::ostringstream os;
    os << "SkewHermitianMatrix: |A + A*| = " << defect << " exceeds " << tolerance;
    throw NumericError(os.str());
  }
}

SkewHermitianMatrix SkewHermitianMatrix::zero(int d) {
  return SkewHermitianMatrix(NoCheck{}, ComplexMatrix::Zero(d, d));
}

SkewHermitianMatrix SkewHermitianMatrix::unchecked(ComplexMatrix m) {
  return SkewHermitianMatrix(NoCheck{}, std::move(m));
}

UnitaryMatrix expm_skew(const SkewHermitianMatrix& a, double t) {
  const int d = a.dim();
  const ComplexMatrix& m = a.matrix();
  if (t == 0.0 || m.isZero(0.0)) return UnitaryMatrix::identity(d);
  if (d == 1) {
    // a = iφ, so exp(ta) = e^{itφ} exactly on the circle.
    const double phi = m(0, 0).imag() * t;
    ComplexMatrix r(1, 1);
    r(0, 0) = Complex(std::cos(phi), std::sin(phi));
    return UnitaryMatrix::unchecked(std::move(r));
  }
  // iA is Hermitian; iA = W Λ W* gives exp(tA) = W diag(e^{-itλ}) W*.
  const ComplexMatrix hermitian = Complex(0.0, 1.0) * m;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(hermitian);
  if (eig.info() != Eigen::Success) {
    throw NumericError("expm_skew: Hermitian eigendecomposition did not converge");
  }
  const auto& lambda = eig.eigenvalues();
  const ComplexMatrix& w = eig.eigenvectors();
  Eigen::VectorXcd phases(d);
  for (int k = 0; k < d; ++k) {
    const double angle = -t * lambda(k);
    phases(k) = Complex(std::cos(angle), std::sin(angle));
  }
  return UnitaryMatrix::unchecked(w * phases.asDiagonal() * w.adjoint());
}

UnitaryMatrix retract_unitary(const ComplexMatrix& m) {
  require_square(m, "retract_unitary");
  const int d = static_cast<int>(m.rows());
  // M*M = V diag(s²) V*, P = V diag(s) V*, Q = M P⁻¹.
  const ComplexMatrix gram = m.adjoint() * m;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(gram);
  if (eig.info() != Eigen::Success) {
    throw NumericError("retract_unitary: eigendecomposition did not converge");
  }
  const auto& s2 = eig.eigenvalues();
  const double largest = s2(d - 1);
  if (!(largest > 0.0) || !(s2(0) > largest * 1e-24)) {
    throw NumericError("retract_unitary: no unique polar factor (matrix is singular)");
  }
  Eigen::VectorXd inv_s(d);
  for (int k = 0; k < d; ++k) inv_s(k) = 1.0 / std::sqrt(s2(k));
  const ComplexMatrix& v = eig.eigenvectors();
  return UnitaryMatrix::unchecked(m * (v * inv_s.asDiagonal() * v.adjoint()));
}

UnitaryMatrix sample_haar(Rng& rng, int d) {
  if (d < 1) throw DimensionError("sample_haar: d must be >= 1");
  ComplexMatrix z(d, d);
  const double scale = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const double re = rng.normal();
      const double im = rng.normal();
      z(i, j) = Complex(re, im) * scale;
    }
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(d, d);
  const ComplexMatrix& r = qr.matrixQR();
  for (int k = 0; k < d; ++k) {
    const Complex rkk = r(k, k);
    const double mag = std::abs(rkk);
    const Complex phase = mag > 0.0 ? rkk / mag : Complex(1.0, 0.0);
    q.col(k) *= phase;
  }
  return UnitaryMatrix(std::move(q), kFreshUnitaryTolerance);
}

SkewHermitianMatrix sample_gaussian_su(Rng& rng, int d, double sigma) {
  if (d < 1) throw DimensionError("sample_gaussian_su: d must be >= 1");
  if (!(sigma > 0.0)) throw std::invalid_argument("sample_gaussian_su: sigma must be > 0");
  ComplexMatrix a = ComplexMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    a(i, i) = Complex(0.0, sigma * rng.normal());
    for (int j = 0; j < i; ++j) {
      const double re = sigma * rng.normal();
      const double im = sigma * rng.normal();
      a(i, j) = Complex(re, im);
      a(j, i) = -std::conj(a(i, j));
    }
  }
  return SkewHermitianMatrix::unchecked(std::move(a));
}

ComplexMatrix skew_part_times_two(const ComplexMatrix& s) { return s - s.adjoint(); }

SkewHermitianMatrix coupling_kernel(const UnitaryMatrix& u, const UnitaryMatrix& v) {
  require_same_dim(u.matrix(), v.matrix(), "coupling_kernel");
  return SkewHermitianMatrix::unchecked(skew_part_times_two(u.matrix() * v.adjoint()));
}

}  // namespace lohe
