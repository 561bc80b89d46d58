// Microbenchmarks for the hot paths: weight construction, sector sweeps,
// statistics, phase expectations, and the two matrix-exponential routes.

#include <benchmark/benchmark.h>

#include <qeit/qeit.hpp>

#include <cmath>
#include <complex>

using cd = std::complex<double>;

namespace {

qeit::CoherentPair coupling_alpha(double n_bar) {
  qeit::CoherentPair f;
  f.alpha = cd{std::sqrt(n_bar), 0.0};
  return f;
}

void bm_poisson_weights(benchmark::State& state) {
  const double mean = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(qeit::poisson_weights(mean, 1e-12));
}
BENCHMARK(bm_poisson_weights)->Arg(50)->Arg(500)->Arg(10000);

void bm_chi_sector(benchmark::State& state) {
  const qeit::SystemParams p;
  std::int64_t n2 = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(qeit::chi_sector(qeit::DriveCase::b, p, 0, 400 + (n2++ % 100), -0.1));
  }
}
BENCHMARK(bm_chi_sector);

void bm_chi_stats(benchmark::State& state) {
  const qeit::SystemParams p;
  const auto fields = coupling_alpha(static_cast<double>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(qeit::chi_stats(qeit::DriveCase::b, p, fields, -0.1, 1e-12));
}
BENCHMARK(bm_chi_stats)->Arg(500)->Arg(5000);

void bm_vg_stats(benchmark::State& state) {
  const qeit::SystemParams p;
  const auto fields = coupling_alpha(500.0);
  for (auto _ : state) benchmark::DoNotOptimize(qeit::vg_stats(p, fields, 0.0, 1e-12));
}
BENCHMARK(bm_vg_stats);

void bm_phase_expectations(benchmark::State& state) {
  const cd alpha = std::polar(std::sqrt(static_cast<double>(state.range(0))), 0.7);
  for (auto _ : state) benchmark::DoNotOptimize(qeit::phase_expectations(alpha, 1e-14));
}
BENCHMARK(bm_phase_expectations)->Arg(500)->Arg(10000);

void bm_steady_state(benchmark::State& state) {
  const qeit::SystemParams p;
  const auto sys = qeit::build_sector(p, qeit::DriveCase::b, 1, 500, -0.2);
  for (auto _ : state) benchmark::DoNotOptimize(qeit::steady_state(sys));
}
BENCHMARK(bm_steady_state);

void bm_evolve(benchmark::State& state) {
  const qeit::SystemParams p;
  const auto sys = qeit::build_sector(p, qeit::DriveCase::b, 1, 500, -0.2);
  qeit::CoherenceVector r0;
  r0.rho_cb = cd{-0.3, 0.1};
  const auto method =
      state.range(0) == 0 ? qeit::ExpmMethod::eigendecomposition : qeit::ExpmMethod::pade;
  for (auto _ : state) benchmark::DoNotOptimize(qeit::evolve(sys, r0, 5.0, method));
}
BENCHMARK(bm_evolve)->Arg(0)->Arg(1);

void bm_uncertainty_bound(benchmark::State& state) {
  const qeit::SystemParams p;
  const cd alpha = std::polar(std::sqrt(500.0), 1.1);
  for (auto _ : state) benchmark::DoNotOptimize(qeit::uncertainty_bound(p, alpha, 0.1, 1e-12));
}
BENCHMARK(bm_uncertainty_bound);

}  // namespace

BENCHMARK_MAIN();
