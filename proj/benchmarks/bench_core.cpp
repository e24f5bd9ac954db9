#include <benchmark/benchmark.h>

#include "snse/fft.hpp"
#include "snse/noise.hpp"
#include "snse/norms.hpp"
#include "snse/operators.hpp"
#include "snse/random_fields.hpp"
#include "snse/solver.hpp"

using namespace snse;

namespace {

SpectralField make_field(int dim, int points, int comps, int kmax) {
  Rng rng(17);
  const Grid g(dim, points);
  SpectralField u = random_trig_poly(g, comps, kmax, rng);
  if (comps == dim && dim >= 2) u = leray_project(u);
  return u;
}

void BM_RoundTrip(benchmark::State& state) {
  const int points = static_cast<int>(state.range(0));
  const SpectralField u = make_field(2, points, 2, points / 4);
  for (auto _ : state) {
    PhysicalField f = inverse_transform(u);
    benchmark::DoNotOptimize(forward_transform(f));
  }
}
BENCHMARK(BM_RoundTrip)->Arg(34)->Arg(66)->Arg(130);

void BM_NonlinearTerm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SpectralField u = make_field(2, 4 * n + 2, 2, n);
  for (auto _ : state) benchmark::DoNotOptimize(nonlinear_term(u, n));
}
BENCHMARK(BM_NonlinearTerm)->Arg(8)->Arg(16)->Arg(32);

void BM_Step(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  SolverConfig cfg;
  cfg.dim = 2;
  cfg.n = n;
  cfg.dt = 1e-3;
  cfg.noise = std::make_shared<const NoiseModel>(
      NoiseModel::additive(cfg.grid(), 8, 0.05, 1.5, 4, 3));
  SolverState st{0.0, make_field(2, cfg.grid().points, 2, n)};
  Rng rng(23);
  for (auto _ : state) {
    const WienerIncrement inc = sample_increment(cfg.noise->basis(), cfg.dt, rng);
    const SpectralField stoch =
        square_truncate(cfg.noise->stochastic_increment(st.u, inc), n);
    step(st, cfg, stoch);
  }
}
BENCHMARK(BM_Step)->Arg(8)->Arg(16)->Arg(32);

void BM_LpNorm(benchmark::State& state) {
  const int points = static_cast<int>(state.range(0));
  const SpectralField u = make_field(3, points, 3, points / 4);
  for (auto _ : state) benchmark::DoNotOptimize(lp_norm(u, 4.0));
}
BENCHMARK(BM_LpNorm)->Arg(16)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
