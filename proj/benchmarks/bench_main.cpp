#include <benchmark/benchmark.h>

#include "hoinet/rng.hpp"
#include "hoinet/signif.hpp"

using namespace hoinet;

namespace {

Matrix random_spd(int n, std::uint64_t seed) {
  Rng rng(seed);
  Matrix a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = rng.gaussian();
  }
  return a * a.transpose() + 0.1 * Matrix::Identity(n, n);
}

void BM_LogDetPd(benchmark::State& state) {
  const Matrix m = random_spd(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(log_det_pd(m));
}
BENCHMARK(BM_LogDetPd)->Arg(5)->Arg(20)->Arg(100);

void BM_Lyapunov(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(2);
  Matrix a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = rng.gaussian();
  }
  a *= 0.8 / spectral_radius(a);
  const Matrix q = random_spd(n, 3);
  for (auto _ : state) benchmark::DoNotOptimize(solve_discrete_lyapunov(a, q));
}
BENCHMARK(BM_Lyapunov)->Arg(5)->Arg(10)->Arg(25);

void BM_ProcessCovariances(benchmark::State& state) {
  const VarModel model = build_star_model({StarVariant::mediator, 0.3, 0.3});
  for (auto _ : state) benchmark::DoNotOptimize(process_covariances(model, 20));
}
BENCHMARK(BM_ProcessCovariances);

void BM_RestrictedModel(benchmark::State& state) {
  const VarModel model = build_star_model({StarVariant::mediator, 0.3, 0.3});
  const LagCovarianceSet covs = process_covariances(model, 20);
  SubsetIndex subset;
  for (int i = 0; i < state.range(0); ++i) subset.push_back(static_cast<int>(i));
  for (auto _ : state) benchmark::DoNotOptimize(restricted_model(covs, subset, 20));
}
BENCHMARK(BM_RestrictedModel)->Arg(1)->Arg(3)->Arg(5);

void BM_AnalyzeStar(benchmark::State& state) {
  const VarModel model = build_star_model({StarVariant::mediator, 0.3, 0.3});
  for (auto _ : state) benchmark::DoNotOptimize(analyze(model, 20));
}
BENCHMARK(BM_AnalyzeStar);

void BM_Simulate(benchmark::State& state) {
  const VarModel model = build_star_model({StarVariant::mediator, 0.3, 0.3});
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate(model, static_cast<int>(state.range(0)), 1000, 4));
  }
}
BENCHMARK(BM_Simulate)->Arg(250)->Arg(1000);

void BM_FitLeastSquares(benchmark::State& state) {
  const VarModel model = build_star_model({StarVariant::mediator, 0.3, 0.3});
  const TimeSeries series = simulate(model, 1000, 1000, 5);
  for (auto _ : state) benchmark::DoNotOptimize(fit_least_squares(series, 1));
}
BENCHMARK(BM_FitLeastSquares);

void BM_BootstrapHoi(benchmark::State& state) {
  const VarModel model = build_star_model({StarVariant::mediator, 0.3, 0.3});
  const TimeSeries series = simulate(model, 500, 1000, 6);
  SignificanceConfig cfg;
  cfg.n_replicates = 20;
  cfg.seed = 7;
  for (auto _ : state) benchmark::DoNotOptimize(bootstrap_hoi(series, 1, 20, cfg));
}
BENCHMARK(BM_BootstrapHoi);

void BM_IaaftSurrogate(benchmark::State& state) {
  const VarModel ar1{1, 1, {Matrix::Constant(1, 1, 0.7)}, Matrix::Identity(1, 1)};
  const Vector column = simulate(ar1, static_cast<int>(state.range(0)), 500, 8).values.col(0);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(iaaft_surrogate(column, ++seed));
}
BENCHMARK(BM_IaaftSurrogate)->Arg(250)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
