#include <benchmark/benchmark.h>

#include <random>

#include "drwavelet/drwavelet.hpp"

using namespace drw;

namespace {

ConsistentEnsemble random_block(int n, int M) {
  std::mt19937_64 rng(1);
  return random_ensemble(n, M, rng);
}

SolverConfig config(const benchmark::State& state) {
  SolverConfig c;
  c.n = static_cast<int>(state.range(0));
  c.M = static_cast<int>(state.range(1));
  c.d = static_cast<int>(state.range(2));
  return c;
}

void BM_Dft(benchmark::State& state) {
  const auto u = expand(random_block(static_cast<int>(state.range(0)), static_cast<int>(state.range(1))));
  for (auto _ : state) benchmark::DoNotOptimize(dft(idft(u)));
}
BENCHMARK(BM_Dft)->Args({1, 4})->Args({1, 14})->Args({2, 4})->Args({2, 6});

void BM_NearestUnitary(benchmark::State& state) {
  const auto N = static_cast<Eigen::Index>(state.range(0));
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CMatrix x(N, N);
  for (Eigen::Index i = 0; i < N * N; ++i) x.data()[i] = {u(rng), u(rng)};
  for (auto _ : state) benchmark::DoNotOptimize(nearest_unitary(x));
}
BENCHMARK(BM_NearestUnitary)->Arg(2)->Arg(4)->Arg(8);

void BM_ProjectC10(benchmark::State& state) {
  const auto c = random_block(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(project_c1_0(c));
}
BENCHMARK(BM_ProjectC10)->Args({1, 4})->Args({2, 4})->Args({2, 6});

void BM_ProjectC1Ell(benchmark::State& state) {
  const auto c = random_block(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(project_c1_ell(1, c));
}
BENCHMARK(BM_ProjectC1Ell)->Args({1, 4})->Args({2, 4})->Args({2, 6});

void BM_ProjectC2(benchmark::State& state) {
  const auto cfg = config(state);
  const auto c = random_block(cfg.n, cfg.M);
  for (auto _ : state) benchmark::DoNotOptimize(project_c2(c, cfg.d));
}
BENCHMARK(BM_ProjectC2)->Args({1, 4, 1})->Args({1, 14, 6})->Args({2, 4, 1})->Args({2, 6, 2});

void BM_DrStep(benchmark::State& state) {
  const auto cfg = config(state);
  std::mt19937_64 rng(3);
  const auto sets = constraint_sets(cfg);
  ProductPoint x = initialize(cfg, rng);
  ProductPoint p = project_diagonal(x);
  for (auto _ : state) {
    StepResult s = dr_step(x, p, sets);
    x = std::move(s.x);
    p = std::move(s.p);
  }
}
BENCHMARK(BM_DrStep)->Args({1, 4, 1})->Args({1, 6, 2})->Args({1, 14, 6})->Args({2, 4, 1})->Args({2, 6, 2});

void BM_Cascade(benchmark::State& state) {
  const FilterBank f = complete_conjugate_flip(
      std::vector<Complex>{0.02490875, -0.0604161, -0.09546721, 0.3251825, 0.57055846, 0.2352336});
  for (auto _ : state) benchmark::DoNotOptimize(cascade(f, static_cast<int>(state.range(0)), 12));
}
BENCHMARK(BM_Cascade)->Arg(6)->Arg(8);

}  // namespace
BENCHMARK_MAIN();
