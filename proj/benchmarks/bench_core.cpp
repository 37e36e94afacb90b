// Microbenchmarks for the hot paths: the counter-based generator, the fringe
// and joint-distribution evaluations, and one full Monte Carlo repetition.

#include <array>
#include <cstdint>

#include <benchmark/benchmark.h>

#include "tiemzi/interferometry.hpp"
#include "tiemzi/montecarlo.hpp"
#include "tiemzi/philox.hpp"
#include "tiemzi/states.hpp"

namespace {

constexpr double kTwoPi = 6.283185307179586;

void bm_philox_block(benchmark::State& state) {
  std::array<std::uint32_t, 4> ctr{1, 2, 3, 4};
  const std::array<std::uint32_t, 2> key{0x12345678u, 0x9abcdef0u};
  for (auto _ : state) {
    ++ctr[0];
    benchmark::DoNotOptimize(tiemzi::Philox4x32::block(ctr, key));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(bm_philox_block);

void bm_counter_uniforms(benchmark::State& state) {
  const tiemzi::CounterRng rng(42);
  std::uint64_t index = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rng.uniforms(index++, 0, 0));
  }
  state.SetItemsProcessed(state.iterations() * 2);
}
BENCHMARK(bm_counter_uniforms);

void bm_tie_fringe_grid(benchmark::State& state) {
  const tiemzi::TieInput tie = tiemzi::tie_from_populations(0.5, 3.0);
  const long long points = state.range(0);
  for (auto _ : state) {
    double acc = 0.0;
    for (long long i = 0; i < points; ++i) {
      const double l = kTwoPi * static_cast<double>(i) / points;
      acc += tiemzi::tie_fringe(tie, l).p_plus;
    }
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * points);
}
BENCHMARK(bm_tie_fringe_grid)->Arg(1001);

void bm_joint_outcome_dist(benchmark::State& state) {
  const tiemzi::TieInput tie = tiemzi::tie_from_populations(0.5, 3.0);
  const tiemzi::WwBasis basis =
      tiemzi::ww_basis(tie, kTwoPi / 4.0, 0.0);
  double delta = 0.0;
  for (auto _ : state) {
    delta += 1e-6;
    const tiemzi::ArmGeometry geom =
        tiemzi::make_arm_geometry(kTwoPi / 4.0, 0.0, delta);
    benchmark::DoNotOptimize(tiemzi::joint_outcome_dist(tie, geom, basis));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(bm_joint_outcome_dist);

void bm_phase_repetition(benchmark::State& state) {
  tiemzi::ExperimentConfig cfg;
  cfg.n_in = state.range(0);
  cfg.repetitions = 1;
  cfg.threads = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(tiemzi::run_phase_experiment(cfg));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_phase_repetition)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
