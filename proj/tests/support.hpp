#pragma once

#include <vector>

#include "lohe/matcore.hpp"
#include "lohe/model.hpp"
#include "lohe/rng.hpp"

namespace lohe::testing {

inline ComplexMatrix random_matrix(Rng& rng, int rows, int cols) {
  ComplexMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const double re = rng.normal();
      m(i, j) = Complex(re, rng.normal());
    }
  }
  return m;
}

inline ComplexMatrix random_matrix(Rng& rng, int d) { return random_matrix(rng, d, d); }

inline std::vector<Oscillator> random_cloud(Rng& rng, int d, std::size_t n, double sigma = 1.0) {
  std::vector<Oscillator> out;
  for (std::size_t j = 0; j < n; ++j) {
    UnitaryMatrix u = sample_haar(rng, d);
    out.emplace_back(std::move(u), sample_gaussian_su(rng, d, sigma));
  }
  return out;
}

inline Ensemble random_ensemble(Rng& rng, int d, std::size_t n, double kappa, double sigma = 1.0) {
  return Ensemble(random_cloud(rng, d, n, sigma), kappa);
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace lohe::testing
