#include "lohe/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lohe {

double pair_cost(const Oscillator& p, const Oscillator& q, CostExponent exponent) {
  require_same_dim(p.u.matrix(), q.u.matrix(), "pair_cost");
  const double du2 = (p.u.matrix() - q.u.matrix()).squaredNorm();
  const double da2 = (p.a.matrix() - q.a.matrix()).squaredNorm();
  if (exponent == CostExponent::Two) return du2 + da2;
  return std::sqrt(du2) + std::sqrt(da2);
}

CostMatrix::CostMatrix(std::size_t n, double fill) : n_(n), c_(n * n, fill) {
  if (!(fill >= 0.0) || !std::isfinite(fill)) throw std::invalid_argument("CostMatrix: costs must be finite and >= 0");
}

CostMatrix::CostMatrix(std::size_t n, std::vector<double> row_major) : n_(n), c_(std::move(row_major)) {
  if (c_.size() != n * n) throw std::invalid_argument("CostMatrix: expected n*n entries");
  for (double v : c_) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument("CostMatrix: costs must be finite and >= 0");
  }
}

void CostMatrix::set(std::size_t i, std::size_t j, double value) {
  if (i >= n_ || j >= n_) throw std::out_of_range("CostMatrix::set: index out of range");
  if (!(value >= 0.0) || !std::isfinite(value)) throw std::invalid_argument("CostMatrix: costs must be finite and >= 0");
  c_[i * n_ + j] = value;
}

CostMatrix build_cost_matrix(const PointCloud& a, const PointCloud& b, CostExponent exponent) {
  if (a.size() != b.size()) throw std::invalid_argument("build_cost_matrix: equal-size clouds required");
  const std::size_t n = a.size();
  std::vector<double> c(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) c[i * n + j] = pair_cost(a[i], b[j], exponent);
  }
  return CostMatrix(n, std::move(c));
}

double permutation_cost(const CostMatrix& c, const std::vector<std::size_t>& perm) {
  if (perm.size() != c.size()) throw std::invalid_argument("permutation_cost: size mismatch");
  // Summed in ascending order so that relabeling either cloud cannot change
  // the rounding of the total.
  std::vector<double> picked(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) picked[i] = c(i, perm[i]);
  std::sort(picked.begin(), picked.end());
  double total = 0.0;
  for (double v : picked) total += v;
  return total;
}

Assignment assignment_solve(const CostMatrix& c) {
  const std::size_t n = c.size();
  Assignment out;
  if (n == 0) return out;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  // 1-based shortest augmenting path; column 0 is a virtual root.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    match[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = match[j0];
      double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = c(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  out.permutation.assign(n, 0);
  for (std::size_t j = 1; j <= n; ++j) out.permutation[match[j] - 1] = j - 1;
  out.total_cost = permutation_cost(c, out.permutation);
  return out;
}

double mk_distance(const PointCloud& a, const PointCloud& b, CostExponent exponent) {
  if (a.size() != b.size()) throw std::invalid_argument("mk_distance: equal-size clouds required");
  if (a.empty()) throw std::invalid_argument("mk_distance: empty clouds");
  const Assignment best = assignment_solve(build_cost_matrix(a, b, exponent));
  const double mean = best.total_cost / static_cast<double>(a.size());
  return exponent == CostExponent::Two ? std::sqrt(mean) : mean;
}

}  // namespace lohe
