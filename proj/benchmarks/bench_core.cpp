#include <benchmark/benchmark.h>

#include "selfsim/hypergeom.hpp"
#include "selfsim/kernels.hpp"
#include "selfsim/residual.hpp"
#include "selfsim/series.hpp"

namespace {

using namespace selfsim;

const EquationSpec kE1{EquationKind::eq1, 3, 1, 0, 0};
const EquationSpec kEq4{EquationKind::eq4, 5, 3, Rational(5, 2), Rational(1, 2)};

// Fresh table each time, so the cost of the whole triangle is measured.
void BM_ACoeffTable(benchmark::State& state) {
  const auto max_j = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    ACoeffTable table(Rational(-7, 3), max_j);
    benchmark::DoNotOptimize(table(max_j / 2, max_j));
  }
}
BENCHMARK(BM_ACoeffTable)->Arg(8)->Arg(32)->Arg(64);

void BM_ACoeffOracle(benchmark::State& state) {
  const auto j = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(a_coeff_oracle(j / 2, j, Rational(-7, 3)));
}
BENCHMARK(BM_ACoeffOracle)->Arg(6)->Arg(8)->Arg(10);

void BM_CoeffSequence(benchmark::State& state) {
  const auto params = derive_params(kEq4);
  const auto order = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(coeff_sequence(kEq4, params, 1, order));
}
BENCHMARK(BM_CoeffSequence)->Arg(12)->Arg(50)->Arg(200);

void BM_EvalPfq(benchmark::State& state) {
  const auto sol = make_solution(kE1, 0, 0);
  const auto h = solution_pfq(sol);
  const Real z(static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(eval_pfq(h, z, Real(1e-12)));
}
BENCHMARK(BM_EvalPfq)->Arg(1)->Arg(100)->Arg(10000);

void BM_ResidualSeries(benchmark::State& state) {
  const auto sol = make_solution(kEq4, 2, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(residual_series(sol));
}
BENCHMARK(BM_ResidualSeries)->Arg(12)->Arg(50);

}  // namespace

BENCHMARK_MAIN();
