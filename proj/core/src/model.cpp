#include "lohe/model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace lohe {

Oscillator::Oscillator(UnitaryMatrix u_, SkewHermitianMatrix a_) : u(std::move(u_)), a(std::move(a_)) {
  if (u.dim() != a.dim()) {
    std::ostringstream os;
    os << "Oscillator: state has dimension " << u.dim() << " but generator has " << a.dim();
    throw DimensionError(os.str());
  }
}

Ensemble::Ensemble(std::vector<Oscillator> oscillators, double kappa)
    : oscillators_(std::move(oscillators)), kappa_(kappa) {
  if (oscillators_.empty()) throw std::invalid_argument("Ensemble: at least one oscillator required");
  if (!(kappa_ >= 0.0) || !std::isfinite(kappa_)) {
    throw std::invalid_argument("Ensemble: kappa must be finite and >= 0");
  }
  const int d = oscillators_.front().dim();
  for (const auto& o : oscillators_) {
    if (o.dim() != d) throw DimensionError("Ensemble: oscillators of mixed dimension");
  }
}

Ensemble Ensemble::with_states(std::vector<UnitaryMatrix> states) const {
  if (states.size() != oscillators_.size()) {
    throw std::invalid_argument("Ensemble::with_states: size mismatch");
  }
  std::vector<Oscillator> next;
  next.reserve(states.size());
  for (std::size_t j = 0; j < states.size(); ++j) {
    next.emplace_back(std::move(states[j]), oscillators_[j].a);
  }
  return Ensemble(std::move(next), kappa_);
}

Ensemble Ensemble::with_generators(const SkewHermitianMatrix& a) const {
  std::vector<Oscillator> next;
  next.reserve(oscillators_.size());
  for (const auto& o : oscillators_) next.emplace_back(o.u, a);
  return Ensemble(std::move(next), kappa_);
}

ComplexMatrix centroid(std::span<const Oscillator> oscillators) {
  if (oscillators.empty()) throw std::invalid_argument("centroid: empty oscillator list");
  ComplexMatrix sum = oscillators.front().u.matrix();
  for (std::size_t k = 1; k < oscillators.size(); ++k) {
    require_same_dim(sum, oscillators[k].u.matrix(), "centroid");
    sum += oscillators[k].u.matrix();
  }
  return sum / static_cast<double>(oscillators.size());
}

SkewHermitianMatrix frozen_field_generator(const Oscillator& osc, const ComplexMatrix& field_mean,
                                           double kappa) {
  require_same_dim(osc.u.matrix(), field_mean, "frozen_field_generator");
  if (kappa == 0.0) return osc.a;
  const ComplexMatrix s = field_mean * osc.u.adjoint();
  return SkewHermitianMatrix::unchecked(osc.a.matrix() + (0.5 * kappa) * skew_part_times_two(s));
}

std::vector<SkewHermitianMatrix> lohe_generators(const Ensemble& e) {
  const auto& osc = e.oscillators();
  const ComplexMatrix mean = centroid(osc);
  std::vector<SkewHermitianMatrix> out;
  out.reserve(osc.size());
  for (const auto& o : osc) out.push_back(frozen_field_generator(o, mean, e.kappa()));
  return out;
}

// --- d = 1 --------------------------------------------------------------

double principal_angle(double angle) {
  double r = std::remainder(angle, 2.0 * std::numbers::pi);  // [-π, π]
  if (r <= -std::numbers::pi) r += 2.0 * std::numbers::pi;
  return r;
}

std::vector<double> kuramoto_rhs(const KuramotoState& s) {
  const std::size_t n = s.thetas.size();
  if (s.nus.size() != n) throw std::invalid_argument("kuramoto_rhs: thetas and nus differ in length");
  std::vector<double> out(n);
  const double coupling = n > 0 ? s.kappa / static_cast<double>(n) : 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) sum += std::sin(s.thetas[k] - s.thetas[j]);
    out[j] = s.nus[j] + coupling * sum;
  }
  return out;
}

KuramotoState to_kuramoto(const Ensemble& e) {
  if (e.dim() != 1) throw DimensionError("to_kuramoto: ensemble must have d = 1");
  KuramotoState s;
  s.kappa = e.kappa();
  for (const auto& o : e.oscillators()) {
    const Complex u = o.u.matrix()(0, 0);
    if (std::abs(std::abs(u) - 1.0) > kUnitaryTolerance) {
      throw NumericError("to_kuramoto: |U_j| differs from 1");
    }
    s.thetas.push_back(principal_angle(-std::arg(u)));
    s.nus.push_back(-o.a.matrix()(0, 0).imag());
  }
  return s;
}

Ensemble from_kuramoto(const KuramotoState& s) {
  if (s.thetas.size() != s.nus.size()) throw std::invalid_argument("from_kuramoto: length mismatch");
  std::vector<Oscillator> osc;
  osc.reserve(s.thetas.size());
  for (std::size_t j = 0; j < s.thetas.size(); ++j) {
    ComplexMatrix u(1, 1), a(1, 1);
    u(0, 0) = Complex(std::cos(s.thetas[j]), -std::sin(s.thetas[j]));
    a(0, 0) = Complex(0.0, -s.nus[j]);
    osc.emplace_back(UnitaryMatrix::unchecked(std::move(u)), SkewHermitianMatrix::unchecked(std::move(a)));
  }
  return Ensemble(std::move(osc), s.kappa);
}

std::vector<double> lohe_d1_phase(const Ensemble& e) {
  // Validates |U_j| = 1 and d = 1.
  (void)to_kuramoto(e);
  const auto gens = lohe_generators(e);
  std::vector<double> out;
  out.reserve(gens.size());
  // dU/dt = 𝒜U with U = e^{−iθ} means 𝒜 = −iθ̇.
  for (const auto& g : gens) out.push_back(-g.matrix()(0, 0).imag());
  return out;
}

// --- d = 2 --------------------------------------------------------------

SwarmVelocity swarming_rhs(const SwarmState& s) {
  const std::size_t n = s.xs.size();
  if (s.omegas.size() != n || s.thetas.size() != n || s.nus.size() != n) {
    throw std::invalid_argument("swarming_rhs: xs, omegas, thetas and nus must have equal length");
  }
  for (std::size_t j = 0; j < n; ++j) {
    if ((s.omegas[j] + s.omegas[j].transpose()).norm() > 1e-12) {
      throw std::invalid_argument("swarming_rhs: Omega_j is not skew-symmetric");
    }
    if (!(s.xs[j].squaredNorm() > 0.0)) throw std::invalid_argument("swarming_rhs: zero-norm x_j");
  }
  SwarmVelocity v;
  v.x_dot.resize(n);
  v.theta_dot.resize(n);
  const double coupling = n > 0 ? s.kappa / static_cast<double>(n) : 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const Eigen::Vector4d& xj = s.xs[j];
    const double norm2 = xj.squaredNorm();
    double phase_sum = 0.0;
    Eigen::Vector4d pull = Eigen::Vector4d::Zero();
    for (std::size_t k = 0; k < n; ++k) {
      const double dtheta = s.thetas[k] - s.thetas[j];
      const double inner = xj.dot(s.xs[k]);
      phase_sum += std::sin(dtheta) * inner;
      pull += std::cos(dtheta) * (norm2 * s.xs[k] - inner * xj);
    }
    v.theta_dot[j] = (s.nus[j] + coupling * phase_sum) / norm2;
    v.x_dot[j] = (s.omegas[j] * xj + coupling * pull) / norm2;
  }
  return v;
}

ComplexMatrix pauli_compose(double theta, const Eigen::Vector4d& x) {
  ComplexMatrix m(2, 2);
  m(0, 0) = Complex(x(3), x(0));
  m(0, 1) = Complex(x(1), x(2));
  m(1, 0) = Complex(-x(1), x(2));
  m(1, 1) = Complex(x(3), -x(0));
  return Complex(std::cos(theta), -std::sin(theta)) * m;
}

Eigen::Vector4d pauli_linear_coordinates(const ComplexMatrix& m) {
  if (m.rows() != 2 || m.cols() != 2) throw DimensionError("pauli_linear_coordinates: need a 2x2 matrix");
  Eigen::Vector4d x;
  x(0) = 0.5 * (m(0, 0).imag() - m(1, 1).imag());
  x(1) = 0.5 * (m(0, 1).real() - m(1, 0).real());
  x(2) = 0.5 * (m(0, 1).imag() + m(1, 0).imag());
  x(3) = 0.5 * (m(0, 0).real() + m(1, 1).real());
  return x;
}

PauliCoordinates pauli_decompose(const UnitaryMatrix& u) {
  if (u.dim() != 2) throw DimensionError("pauli_decompose: need d = 2");
  const ComplexMatrix& m = u.matrix();
  const Complex det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  // det U = e^{−2iθ}·‖x‖², so θ = −arg(det)/2 ∈ [−π/2, π/2).
  double theta = -0.5 * std::arg(det);
  PauliCoordinates out;
  out.theta = theta;
  out.x = pauli_linear_coordinates(Complex(std::cos(theta), std::sin(theta)) * m);
  // (θ, x) and (θ + π, −x) describe the same U. Away from the cut θ = −π/2
  // the branch is fixed; on it, keep x⁴ ≥ 0 and prefer θ = +π/2.
  constexpr double kBranchSlack = 1e-12;
  if (theta <= -0.5 * std::numbers::pi + kBranchSlack && out.x(3) <= 0.0) {
    out.theta = theta + std::numbers::pi;
    out.x = -out.x;
  }
  return out;
}

Eigen::Matrix4d omega_from_hamiltonian(const ComplexMatrix& h) {
  if (h.rows() != 2 || h.cols() != 2) throw DimensionError("omega_from_hamiltonian: need a 2x2 matrix");
  const Complex trace_half = 0.5 * h.trace();
  const ComplexMatrix traceless = h - trace_half * ComplexMatrix::Identity(2, 2);
  Eigen::Matrix4d omega;
  for (int k = 0; k < 4; ++k) {
    const Eigen::Vector4d e = Eigen::Vector4d::Unit(k);
    omega.col(k) = pauli_linear_coordinates(Complex(0.0, -1.0) * traceless * pauli_compose(0.0, e));
  }
  return omega;
}

}  // namespace lohe
