#include <benchmark/benchmark.h>

#include "sphcontract/specfun.hpp"

using namespace sphc;

static void BM_JacobiP(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(jacobi_p(n, 0.5, 0.5, 0.3));
}
BENCHMARK(BM_JacobiP)->Arg(50)->Arg(200);

static void BM_BesselJ(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(bessel_j(2, 7.5));
}
BENCHMARK(BM_BesselJ);

static void BM_WignerDEntry(benchmark::State& state) {
  const int j = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(wigner_d_small(j, 2, -1, 1.1));
}
BENCHMARK(BM_WignerDEntry)->Arg(8)->Arg(64)->Arg(256);

static void BM_WignerMatrix(benchmark::State& state) {
  const int j = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(wigner_d_matrix(j, 0.9));
  state.SetComplexityN(j);
}
BENCHMARK(BM_WignerMatrix)->Arg(8)->Arg(32)->Arg(128)->Complexity();
