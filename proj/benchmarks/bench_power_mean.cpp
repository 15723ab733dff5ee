// Microbenchmarks for the hot paths: the geometric-mean kernel, the Thompson
// metric, and the full power-mean solve at representative sizes.

#include <benchmark/benchmark.h>

#include "meanlab/inequality_lab.hpp"
#include "meanlab/power_mean.hpp"

using namespace meanlab;

namespace {

AtomicMeasure bench_measure(int n, int k, std::uint64_t seed) {
  std::vector<PdMatrix> atoms;
  std::vector<double> weights(k, 1.0 / k);
  for (int i = 0; i < k; ++i) atoms.push_back(random_pd(n, 100.0, seed + i));
  return AtomicMeasure(std::move(atoms), std::move(weights));
}

void BM_Gmean(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const PdMatrix a = random_pd(n, 100.0, 1);
  const PdMatrix b = random_pd(n, 100.0, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gmean(a, b, 0.5));
  }
}
BENCHMARK(BM_Gmean)->Arg(4)->Arg(16)->Arg(64);

void BM_Thompson(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const PdMatrix a = random_pd(n, 100.0, 3);
  const PdMatrix b = random_pd(n, 100.0, 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(thompson(a, b));
  }
}
BENCHMARK(BM_Thompson)->Arg(4)->Arg(16)->Arg(64);

void BM_Solve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const double t = state.range(1) / 100.0;
  const AtomicMeasure mu = bench_measure(n, 6, 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve(mu, t));
  }
  state.counters["iterations"] =
      static_cast<double>(solve(mu, t).report.iterations);
}
BENCHMARK(BM_Solve)->Args({4, 50})->Args({16, 50})->Args({4, 25})->Args({4, -50});

void BM_CheckSandwich(benchmark::State& state) {
  const AtomicMeasure mu = bench_measure(static_cast<int>(state.range(0)), 4, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(check_sandwich(mu, 0.25, 0.75));
  }
}
BENCHMARK(BM_CheckSandwich)->Arg(4)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
