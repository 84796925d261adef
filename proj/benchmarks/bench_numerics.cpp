#include <benchmark/benchmark.h>

#include <random>

#include "ringpairs/numerics/linalg.hpp"
#include "ringpairs/numerics/quadrature.hpp"

using namespace ringpairs::numerics;

namespace {

ComplexMatrix random_matrix(Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  ComplexMatrix m(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) m(i, j) = {g(rng), g(rng)};
  return m;
}

}  // namespace

static void BM_svd_full(benchmark::State& state) {
  auto a = random_matrix(state.range(0), 1);
  for (auto _ : state) benchmark::DoNotOptimize(svd(a));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_svd_full)->RangeMultiplier(2)->Range(64, 512)->Unit(benchmark::kMillisecond)->Complexity();

static void BM_singular_values(benchmark::State& state) {
  auto a = random_matrix(state.range(0), 2);
  for (auto _ : state) benchmark::DoNotOptimize(singular_values(a));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_singular_values)->RangeMultiplier(2)->Range(64, 1024)->Unit(benchmark::kMillisecond)->Complexity();

static void BM_takagi(benchmark::State& state) {
  auto a = random_matrix(state.range(0), 3);
  ComplexMatrix s = 0.5 * (a + a.transpose());
  for (auto _ : state) benchmark::DoNotOptimize(takagi(s));
}
BENCHMARK(BM_takagi)->RangeMultiplier(2)->Range(64, 512)->Unit(benchmark::kMillisecond);

// Lorentzian pair product, the shape of the golden-rule integrand.
static void BM_quad_lorentzian(benchmark::State& state) {
  const double half = static_cast<double>(state.range(0));
  auto f = [](double x) { return 1.0 / ((x * x + 1.0) * ((x - 3.0) * (x - 3.0) + 1.0)); };
  const double breaks[] = {-half, 0.0, 3.0, half};
  Tolerance tol{1e-300, 1e-10, 2000};
  for (auto _ : state) benchmark::DoNotOptimize(adaptive_quad(f, std::span<const double>(breaks), tol));
}
BENCHMARK(BM_quad_lorentzian)->Arg(50)->Arg(400)->Arg(5000);
