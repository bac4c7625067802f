#include <benchmark/benchmark.h>

#include <random>

#include "sphcontract/groups.hpp"
#include "sphcontract/harness.hpp"
#include "sphcontract/partitions.hpp"
#include "sphcontract/repmodels.hpp"
#include "sphcontract/spherical.hpp"

using namespace sphc;

namespace {

MotionElement sample_motion(int n) {
  std::mt19937_64 rng(5);
  Eigen::VectorXd x(n);
  for (int i = 0; i < n; ++i) x(i) = 0.3 * (i + 1);
  return MotionElement(random_rotation(n, rng), x);
}

}  // namespace

static void BM_CompactEvaluatorBuild(benchmark::State& state) {
  const int ell = static_cast<int>(state.range(0));
  const TauModel tau = TauModel::make(3, Partition({2}, 3));
  for (auto _ : state) {
    CompactSpherical ev(CompactRepLabel{Partition({ell, 0}, 4)}, tau);
    benchmark::DoNotOptimize(ev.projection_residual());
  }
}
BENCHMARK(BM_CompactEvaluatorBuild)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_CompactValueN3(benchmark::State& state) {
  const int ell = static_cast<int>(state.range(0));
  const TauModel tau = TauModel::make(3, Partition({2}, 3));
  const CompactSpherical ev(CompactRepLabel{Partition({ell, 0}, 4)}, tau);
  const CompactElement g = contract_compact(double(ell), sample_motion(3));
  for (auto _ : state) benchmark::DoNotOptimize(ev.value(g).mat);
}
BENCHMARK(BM_CompactValueN3)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_CompactValueN2(benchmark::State& state) {
  const int ell = static_cast<int>(state.range(0));
  const TauModel tau = TauModel::make(2, Partition({1}, 2));
  const CompactSpherical ev(CompactRepLabel{Partition({ell}, 3)}, tau);
  const CompactElement g = contract_compact(double(ell), sample_motion(2));
  for (auto _ : state) benchmark::DoNotOptimize(ev.value(g).mat);
}
BENCHMARK(BM_CompactValueN2)->Arg(64)->Arg(256);

static void BM_MotionValueN3(benchmark::State& state) {
  const TauModel tau = TauModel::make(3, Partition({2}, 3));
  const MotionSpherical ev(MotionRepParams(3, Partition({0}, 2), 1.0), tau);
  const MotionElement g = sample_motion(3);
  for (auto _ : state) benchmark::DoNotOptimize(ev.value(g).mat);
}
BENCHMARK(BM_MotionValueN3)->Unit(benchmark::kMillisecond);

static void BM_LorentzValue(benchmark::State& state) {
  const TauModel tau = TauModel::make(2, Partition({1}, 2));
  const LorentzSpherical ev(PrincipalSeriesParams{64.0}, tau);
  const LorentzElement g = contract_lorentz(64.0, sample_motion(2));
  for (auto _ : state) benchmark::DoNotOptimize(ev.value(g).mat);
}
BENCHMARK(BM_LorentzValue);

static void BM_ContractionDefect(benchmark::State& state) {
  const MotionElement h1 = sample_motion(3);
  std::mt19937_64 rng(11);
  const MotionElement h2(random_rotation(3, rng), 0.4 * Eigen::Vector3d::Ones());
  for (auto _ : state)
    benchmark::DoNotOptimize(contraction_defect(100.0, h1, h2));
}
BENCHMARK(BM_ContractionDefect);

BENCHMARK_MAIN();
