// Serial reference against the OpenMP kernel for the certified sweep and
// the Monte-Carlo simulation. Run with OMP_NUM_THREADS to vary the team.

#include <benchmark/benchmark.h>

#include "symrd/achievability.hpp"
#include "symrd/sweep.hpp"
#include "symrd/upper_bound.hpp"

using namespace symrd;

namespace {

Model case2() { return Model::from_eigenvalues(10, 0.5, 1.0, 6.0, 3.0); }

template <bool Parallel>
void BM_CertifiedSweep(benchmark::State& state) {
  const Model m = case2();
  const auto grid = distortion_grid(m.d_min(), m.sigma_x_sq(), static_cast<int>(state.range(0)));
  SweepOptions opt;
  opt.certify = true;
  for (auto _ : state) {
    auto rows = Parallel ? sweep(m, grid, opt) : sweep_serial(m, grid, opt);
    benchmark::DoNotOptimize(rows.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_Simulate(benchmark::State& state) {
  const Model m = Model::from_eigenvalues(10, 0.8, 1.0, 5.0, 4.0);
  SimConfig c;
  c.spec = m.spec();
  c.lambda_q = solve_lambda_q(m.spectrum(), m.L(), 0.85).lambda_q;
  c.n_samples = state.range(0);
  c.seed = 7;
  for (auto _ : state) {
    const SimResult r = Parallel ? simulate(c) : simulate_serial(c);
    benchmark::DoNotOptimize(r.distortion_empirical);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_CertifiedSweep<false>)->Name("sweep/serial")->Arg(50)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CertifiedSweep<true>)->Name("sweep/parallel")->Arg(50)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Simulate<false>)->Name("simulate/serial")->Arg(200'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Simulate<true>)->Name("simulate/parallel")->Arg(200'000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
