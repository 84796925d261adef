#include <benchmark/benchmark.h>

#include "ringpairs/constants.hpp"
#include "ringpairs/pulsed.hpp"

using namespace ringpairs;

namespace {

struct Setup {
  ResonantTriple triple;
  NonlinearCoupling coupling;
};

// 30 um ring near 1550 nm, critical coupling, loaded Q 5e5 / 5e4.
Setup ring_setup() {
  RingGeometry ring(30e-6, 986e-9, 104e-9, "AlGaAs");
  const double v = constants::c / 3.5;
  const double wp = omega_from_wavelength(774.82e-9), ws = omega_from_wavelength(1524.57e-9);
  const double wi = wp - ws + 2.0 * constants::pi * 61e6;
  auto qs = quality_from_loaded(5e5, 0.5), qp = quality_from_loaded(5e4, 0.5);
  ResonantTriple t{ring, make_resonance(Role::pump, 474, wp, v, qp.intrinsic, qp.extrinsic, ring),
                   make_resonance(Role::signal, 244, ws, v, qs.intrinsic, qs.extrinsic, ring),
                   make_resonance(Role::idler, 232, wi, v, qs.intrinsic, qs.extrinsic, ring)};
  return {t, kbar_matched(Chi2Spec{220e-12}, 30e-6, 0.67e-12, Sign::plus, ReferenceSet::uniform(3.5))};
}

}  // namespace

static void BM_build_jsa_grid(benchmark::State& state) {
  auto s = ring_setup();
  auto pulse = PumpPulse::gaussian(1.5e-9, 10e-6, 0.0, s.triple.pump);
  GridSpec spec{static_cast<int>(state.range(0)), 20.0};
  for (auto _ : state) benchmark::DoNotOptimize(build_jsa_grid(s.triple, s.coupling, pulse, spec));
  state.SetItemsProcessed(state.iterations() * 4 * state.range(0) * state.range(0));
}
BENCHMARK(BM_build_jsa_grid)->RangeMultiplier(2)->Range(64, 512)->Unit(benchmark::kMillisecond);

static void BM_schmidt_values(benchmark::State& state) {
  auto s = ring_setup();
  auto pulse = PumpPulse::gaussian(15e-9, 10e-6, 0.0, s.triple.pump);
  auto grid = build_jsa_grid(s.triple, s.coupling, pulse, GridSpec{static_cast<int>(state.range(0)), 20.0});
  auto j = build_squeezing_matrix(grid);
  for (auto _ : state) benchmark::DoNotOptimize(schmidt_decompose(j, grid.pump_photons, {false, false}));
}
BENCHMARK(BM_schmidt_values)->RangeMultiplier(2)->Range(64, 512)->Unit(benchmark::kMillisecond);

static void BM_solve_pulsed(benchmark::State& state) {
  auto s = ring_setup();
  auto pulse = PumpPulse::gaussian(static_cast<double>(state.range(0)) * 1e-12, 10e-6, 0.0, s.triple.pump);
  for (auto _ : state) benchmark::DoNotOptimize(solve_pulsed(s.triple, s.coupling, pulse, RefinementPolicy{}));
}
BENCHMARK(BM_solve_pulsed)->Arg(15)->Arg(15000)->Unit(benchmark::kMillisecond)->Iterations(1);

BENCHMARK_MAIN();
