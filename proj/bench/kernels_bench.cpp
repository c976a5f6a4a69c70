// Serial reference kernels against the OpenMP versions, plus pair-level
// parallelism in gc_network.
#include <benchmark/benchmark.h>

#include <omp.h>

#include <random>

#include "krrgc/gc.hpp"
#include "krrgc/kernel.hpp"
#include "krrgc/simnet.hpp"

using namespace krrgc;

namespace {

Matrix rows(int n, int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  Matrix m(n, d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = nd(rng);
  return m;
}

void BM_GramSerial(benchmark::State& state) {
  const auto x = rows(static_cast<int>(state.range(0)), 30, 1);
  for (auto _ : state) benchmark::DoNotOptimize(reference::gram_matrix(x, 1.0 / 30));
}

void BM_GramParallel(benchmark::State& state) {
  const auto x = rows(static_cast<int>(state.range(0)), 30, 1);
  omp_set_num_threads(static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(gram_matrix(x, 1.0 / 30));
}

void BM_PredictSerial(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto x = rows(n, 30, 2), q = rows(n / 2, 30, 3);
  const Vector alpha = Vector::Ones(n);
  for (auto _ : state) benchmark::DoNotOptimize(reference::kernel_predict(x, alpha, q, 1.0 / 30));
}

void BM_PredictParallel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto x = rows(n, 30, 2), q = rows(n / 2, 30, 3);
  const Vector alpha = Vector::Ones(n);
  omp_set_num_threads(static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(kernel_predict(x, alpha, q, 1.0 / 30));
}

void BM_Network(benchmark::State& state) {
  const auto sim = generate({NetworkKind::kNonlinear5, static_cast<std::size_t>(state.range(0)), 500, 1});
  GcConfig cfg;
  cfg.lags = 3;
  for (auto _ : state) benchmark::DoNotOptimize(gc_network(sim.panel, cfg, static_cast<int>(state.range(1))));
}

}  // namespace

BENCHMARK(BM_GramSerial)->Arg(250)->Arg(700)->Arg(1400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GramParallel)->ArgsProduct({{250, 700, 1400}, {1, 2, 4}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PredictSerial)->Arg(700)->Arg(1400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PredictParallel)->ArgsProduct({{700, 1400}, {1, 2, 4}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Network)->ArgsProduct({{500, 1000}, {1, 4}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
