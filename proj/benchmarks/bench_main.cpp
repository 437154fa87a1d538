#include <benchmark/benchmark.h>

#include <vector>

#include "lohe/integrate.hpp"
#include "lohe/rng.hpp"
#include "lohe/transport.hpp"

namespace {

std::vector<lohe::Oscillator> cloud(lohe::Rng& rng, int d, std::size_t n) {
  std::vector<lohe::Oscillator> out;
  out.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    lohe::UnitaryMatrix u = lohe::sample_haar(rng, d);
    out.emplace_back(std::move(u), lohe::sample_gaussian_su(rng, d));
  }
  return out;
}

void BM_Cf2Step(benchmark::State& state) {
  lohe::Rng rng(1);
  const auto n = static_cast<std::size_t>(state.range(0));
  lohe::Ensemble e(cloud(rng, 2, n), 1.0);
  const lohe::GeneratorFn gens = lohe::lohe_generator_fn();
  for (auto _ : state) {
    e = lohe::step(e, 1e-3, gens, lohe::Method::CF2);
    benchmark::DoNotOptimize(e);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n));
}
BENCHMARK(BM_Cf2Step)->Arg(256)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_Assignment(benchmark::State& state) {
  lohe::Rng rng(2);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto cost = lohe::build_cost_matrix(cloud(rng, 2, n), cloud(rng, 2, n), lohe::CostExponent::Two);
  for (auto _ : state) benchmark::DoNotOptimize(lohe::assignment_solve(cost));
}
BENCHMARK(BM_Assignment)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_ExpmSkew(benchmark::State& state) {
  lohe::Rng rng(3);
  const int d = static_cast<int>(state.range(0));
  const lohe::SkewHermitianMatrix a = lohe::sample_gaussian_su(rng, d);
  for (auto _ : state) benchmark::DoNotOptimize(lohe::expm_skew(a, 0.01));
}
BENCHMARK(BM_ExpmSkew)->Arg(2)->Arg(4)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
