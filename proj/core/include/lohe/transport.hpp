#pragma once

// Monge–Kantorovich distances between equal-size uniform clouds on
// U(d) × u(d). With equal weights an optimal coupling can be taken to be a
// permutation, so the distance is an exact assignment problem.

#include <cstddef>
#include <vector>

#include "lohe/model.hpp"

namespace lohe {

using PointCloud = std::vector<Oscillator>;

enum class CostExponent { One = 1, Two = 2 };

/// Exponent 2: ‖U_p − U_q‖₂² + ‖A_p − A_q‖₂². Exponent 1: ‖U_p − U_q‖₂ + ‖A_p − A_q‖₂.
double pair_cost(const Oscillator& p, const Oscillator& q, CostExponent exponent);

/// Dense row-major n×n matrix of finite nonnegative costs.
class CostMatrix {
 public:
  explicit CostMatrix(std::size_t n, double fill = 0.0);
  CostMatrix(std::size_t n, std::vector<double> row_major);

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return c_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, double value);

 private:
  std::size_t n_;
  std::vector<double> c_;
};

CostMatrix build_cost_matrix(const PointCloud& a, const PointCloud& b, CostExponent exponent);

struct Assignment {
  /// Row i is matched to column permutation[i].
  std::vector<std::size_t> permutation;
  /// Σ_i c(i, permutation[i]), see permutation_cost.
  double total_cost = 0.0;
};

/// Minimum-cost perfect matching (Hungarian method with potentials, O(n³)).
Assignment assignment_solve(const CostMatrix& c);

/// Σ_i c(i, perm[i]), the terms added in ascending order of value.
double permutation_cost(const CostMatrix& c, const std::vector<std::size_t>& perm);

/// dist_MK,2 = sqrt(min mean cost) or dist_MK,1 = min mean cost. Throws
/// std::invalid_argument("equal-size clouds required") on a size mismatch.
double mk_distance(const PointCloud& a, const PointCloud& b, CostExponent exponent);

}  // namespace lohe
