#include <benchmark/benchmark.h>

#include "lzep/analytic.hpp"
#include "lzep/model.hpp"
#include "lzep/propagate.hpp"
#include "lzep/repr_lift.hpp"

namespace {

lzep::OperatorMatrix sample_sl2() {
  lzep::OperatorMatrix d(2, 2);
  d << lzep::Complex(1.2, 0.3), lzep::Complex(0.4, -0.1), lzep::Complex(-0.2, 0.5), lzep::Complex(0.0, 0.0);
  // Fix d(1,1) so that det = 1.
  d(1, 1) = (1.0 + d(0, 1) * d(1, 0)) / d(0, 0);
  return d;
}

void BM_Lift(benchmark::State& state) {
  const lzep::SpinSpace space(static_cast<int>(state.range(0)));
  const lzep::OperatorMatrix d = sample_sl2();
  for (auto _ : state) benchmark::DoNotOptimize(lzep::lift(d, space));
}
BENCHMARK(BM_Lift)->Arg(2)->Arg(8)->Arg(32)->Arg(64);

void BM_Eigensystem(benchmark::State& state) {
  const auto params = lzep::ModelParams::pt_symmetric(static_cast<int>(state.range(0)), 1.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(lzep::eigensystem_at(params, 1.7));
}
BENCHMARK(BM_Eigensystem)->Arg(2)->Arg(8)->Arg(32);

void BM_AnalyticMatrix(benchmark::State& state) {
  const auto params = lzep::ModelParams::hermitian(static_cast<int>(state.range(0)), 1.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(lzep::analytic_transition_matrix(params));
}
BENCHMARK(BM_AnalyticMatrix)->Arg(4)->Arg(16)->Arg(32);

void BM_Evolve(benchmark::State& state) {
  const auto params = lzep::ModelParams::pt_symmetric(static_cast<int>(state.range(0)), 1.0, 1.0);
  lzep::StateVector psi0 = lzep::StateVector::Zero(params.space.levels());
  psi0(0) = 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(lzep::evolve(params, psi0, -20.0, 20.0));
}
BENCHMARK(BM_Evolve)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
