#include "lohe/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lohe {

DiagnosticSeries::DiagnosticSeries(std::vector<double> times) : times_(std::move(times)) {}

void DiagnosticSeries::set(const std::string& name, std::vector<double> values) {
  if (values.size() != times_.size()) {
    throw std::invalid_argument("DiagnosticSeries: column '" + name + "' has wrong length");
  }
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it != names_.end()) {
    columns_[static_cast<std::size_t>(it - names_.begin())] = std::move(values);
    return;
  }
  names_.push_back(name);
  columns_.push_back(std::move(values));
}

bool DiagnosticSeries::has(const std::string& name) const {
  return std::find(names_.begin(), names_.end(), name) != names_.end();
}

const std::vector<double>& DiagnosticSeries::column(const std::string& name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw std::out_of_range("DiagnosticSeries: no column '" + name + "'");
  return columns_[static_cast<std::size_t>(it - names_.begin())];
}

namespace {

void require_nonempty(std::span<const Oscillator> cloud, const char* what) {
  if (cloud.empty()) throw std::invalid_argument(std::string(what) + ": empty cloud");
}

}  // namespace

double diameter(std::span<const Oscillator> cloud) {
  require_nonempty(cloud, "diameter");
  double best = 0.0;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    for (std::size_t j = i + 1; j < cloud.size(); ++j) {
      best = std::max(best, (cloud[i].u.matrix() - cloud[j].u.matrix()).norm());
    }
  }
  return best;
}

double frequency_spread(std::span<const Oscillator> cloud) {
  require_nonempty(cloud, "frequency_spread");
  double best = 0.0;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    for (std::size_t j = i + 1; j < cloud.size(); ++j) {
      best = std::max(best, (cloud[i].a.matrix() - cloud[j].a.matrix()).norm());
    }
  }
  return best;
}

double lambda_functional(std::span<const Oscillator> cloud) {
  require_nonempty(cloud, "lambda_functional");
  double sum = 0.0;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    for (std::size_t j = i + 1; j < cloud.size(); ++j) {
      sum += (cloud[i].u.matrix() - cloud[j].u.matrix()).squaredNorm();
    }
  }
  const double n = static_cast<double>(cloud.size());
  return 2.0 * sum / (n * n);
}

double eta_max() { return std::pow(2.0 / 3.0, 1.5); }

namespace {

double cubic(double z, double eta) { return 0.5 * z * z * z - z + eta; }

// Bisection on a sign-changing bracket, then Newton steps kept inside it.
double bracketed_root(double lo, double hi, double eta) {
  double flo = cubic(lo, eta);
  if (flo == 0.0) return lo;
  if (cubic(hi, eta) == 0.0) return hi;
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = cubic(mid, eta);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  double z = 0.5 * (lo + hi);
  for (int it = 0; it < 4; ++it) {
    const double slope = 1.5 * z * z - 1.0;
    if (slope == 0.0) break;
    const double next = z - cubic(z, eta) / slope;
    if (!(next >= lo && next <= hi)) break;
    z = next;
  }
  return z;
}

}  // namespace

CubicRoots zeta_roots(double eta) {
  if (!(eta >= 0.0) || !(eta < eta_max())) {
    throw std::domain_error("zeta_roots: no two nonnegative roots for this eta");
  }
  const double pivot = std::sqrt(2.0 / 3.0);
  CubicRoots r;
  r.eta = eta;
  if (eta == 0.0) {
    r.zeta1 = 0.0;
    r.zeta2 = std::sqrt(2.0);
    return r;
  }
  r.zeta1 = bracketed_root(0.0, pivot, eta);
  r.zeta2 = bracketed_root(pivot, std::sqrt(2.0), eta);
  return r;
}

BarrierSolution barrier_ode(double alpha, double kappa, double y0, std::span<const double> t_grid) {
  if (!(kappa > 0.0) || !(alpha >= 0.0) || !std::isfinite(alpha) || !std::isfinite(kappa)) {
    throw std::domain_error("barrier_ode: outside barrier regime (need kappa > 0, alpha >= 0)");
  }
  const double eta = alpha / kappa;
  if (!(eta < eta_max())) throw std::domain_error("barrier_ode: outside barrier regime (alpha/kappa too large)");
  const double z2 = zeta_roots(eta).zeta2;
  if (!(y0 >= 0.0) || !(y0 < z2)) {
    throw std::domain_error("barrier_ode: outside barrier regime (y0 must lie in [0, zeta2))");
  }
  if (t_grid.empty()) throw std::invalid_argument("barrier_ode: empty time grid");

  auto rhs = [&](double y) { return alpha - kappa * y + 0.5 * kappa * y * y * y; };
  const double threshold = std::sqrt(2.0 / 3.0);

  BarrierSolution out;
  out.times.assign(t_grid.begin(), t_grid.end());
  out.y.reserve(t_grid.size());
  double y = y0;
  double t = t_grid[0];
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    const double target = t_grid[k];
    if (target < t) throw std::invalid_argument("barrier_ode: time grid must be nondecreasing");
    const double span = target - t;
    if (span > 0.0) {
      const auto sub = static_cast<std::size_t>(std::ceil(span / 1e-3));
      const double h = span / static_cast<double>(sub);
      for (std::size_t s = 0; s < sub; ++s) {
        const double k1 = rhs(y);
        const double k2 = rhs(y + 0.5 * h * k1);
        const double k3 = rhs(y + 0.5 * h * k2);
        const double k4 = rhs(y + h * k3);
        y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      }
      t = target;
    }
    out.y.push_back(y);
    if (!out.first_crossing && y <= threshold) out.first_crossing = target;
  }
  return out;
}

Envelope sync_envelopes(double d0, double kappa, double t) {
  if (!(d0 >= 0.0) || !(d0 < std::sqrt(2.0))) {
    throw std::domain_error("sync_envelopes: outside small-support regime (need 0 <= D0 < sqrt 2)");
  }
  if (!(kappa > 0.0)) throw std::domain_error("sync_envelopes: kappa must be > 0");
  if (!(t >= 0.0)) throw std::domain_error("sync_envelopes: t must be >= 0");
  const double d2 = d0 * d0;
  const double decay = std::exp(-2.0 * kappa * t);
  Envelope e;
  e.lower = d2 * decay * (1.0 - 0.5 * d2 * (1.0 - decay));
  // Same expression multiplied through by e^{−2κt} to avoid overflow.
  e.upper = 2.0 * d2 * decay / ((2.0 - d2) + d2 * decay);
  return e;
}

double mean_field_bound(int d, std::size_t n, double t) {
  if (d < 1 || n < 1) throw std::invalid_argument("mean_field_bound: d and n must be >= 1");
  if (!(t >= 0.0)) throw std::invalid_argument("mean_field_bound: t must be >= 0");
  return 8.0 * d / (5.0 * static_cast<double>(n)) * std::expm1(10.0 * t);
}

double practical_sync_limit(double alpha, double kappa) {
  if (!(alpha > 0.0) || !(kappa > std::pow(1.5, 1.5) * alpha)) {
    throw std::domain_error("practical_sync_limit: need kappa > (3/2)^{3/2} alpha > 0");
  }
  return 1.5 * alpha / kappa;
}

AuxIdentity aux_identity_check(const UnitaryMatrix& u1m, const UnitaryMatrix& u2m,
                               std::span<const Oscillator> cloud) {
  require_nonempty(cloud, "aux_identity_check");
  require_same_dim(u1m.matrix(), u2m.matrix(), "aux_identity_check");
  const ComplexMatrix& u1 = u1m.matrix();
  const ComplexMatrix& u2 = u2m.matrix();
  const int d = u1m.dim();
  const double inv_n = 1.0 / static_cast<double>(cloud.size());

  ComplexMatrix mean = ComplexMatrix::Zero(d, d);
  ComplexMatrix spread1 = ComplexMatrix::Zero(d, d);
  ComplexMatrix spread2 = ComplexMatrix::Zero(d, d);
  for (const auto& o : cloud) {
    const ComplexMatrix& v = o.u.matrix();
    require_same_dim(v, u1, "aux_identity_check");
    mean += v;
    spread1 += (v - u1) * (v - u1).adjoint();
    spread2 += (v - u2) * (v - u2).adjoint();
  }
  mean *= inv_n;
  spread1 *= inv_n;
  spread2 *= inv_n;
  const ComplexMatrix mean_adj = mean.adjoint();
  const ComplexMatrix delta = u1 - u2;
  const ComplexMatrix dd = delta * delta.adjoint();

  const Complex lhs = (delta.adjoint() * (u2 * mean_adj * u2 - u1 * mean_adj * u1)).trace() +
                      ((u2.adjoint() * mean * u2.adjoint() - u1.adjoint() * mean * u1.adjoint()) * delta).trace();
  const Complex rhs = -4.0 * delta.squaredNorm() + (spread2 * dd).trace() + (spread1 * dd).trace();

  AuxIdentity out;
  out.lhs = lhs.real();
  out.rhs = rhs.real();
  out.gap = std::abs(lhs - rhs);
  return out;
}

}  // namespace lohe
