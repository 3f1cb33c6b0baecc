#include <benchmark/benchmark.h>

#include "dirac/analysis.hpp"

namespace {

using dirac::BarrierChain;
using dirac::Complex;
using dirac::CuspBarrier;
using dirac::SquareBarrier;

BarrierChain double_square() {
  return BarrierChain(1.0, {SquareBarrier{5.0, 3.0, 0.0}, SquareBarrier{5.0, 3.0, 5.0}});
}

BarrierChain double_cusp() {
  return BarrierChain(1.0, {CuspBarrier{6.4271, 0.4, 0.0}, CuspBarrier{6.4271, 0.4, 4.0}});
}

void BM_KummerSeries(benchmark::State& state) {
  const Complex a{1.0, -0.9}, b{1.0, 0.66}, z{0.0, 5.14};
  for (auto _ : state) benchmark::DoNotOptimize(dirac::kummer_m(a, b, z));
}
BENCHMARK(BM_KummerSeries);

void BM_SquareChain(benchmark::State& state) {
  const BarrierChain chain = double_square();
  double e = 1.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dirac::chain_smatrix(chain, e));
    e = e < 2.9 ? e + 1e-4 : 1.5;
  }
}
BENCHMARK(BM_SquareChain);

void BM_CuspChain(benchmark::State& state) {
  const BarrierChain chain = double_cusp();
  double e = 1.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dirac::chain_smatrix(chain, e));
    e = e < 2.9 ? e + 1e-4 : 1.5;
  }
}
BENCHMARK(BM_CuspChain);

void BM_FindPolesSquare(benchmark::State& state) {
  const BarrierChain chain = double_square();
  for (auto _ : state) benchmark::DoNotOptimize(dirac::find_poles(chain, {1.0, 3.0, -0.5, 0.0}));
}
BENCHMARK(BM_FindPolesSquare)->Unit(benchmark::kMillisecond);

void BM_FindPolesCusp(benchmark::State& state) {
  const BarrierChain chain = double_cusp();
  for (auto _ : state) benchmark::DoNotOptimize(dirac::find_poles(chain, {1.0, 3.0, -0.5, 0.0}));
}
BENCHMARK(BM_FindPolesCusp)->Unit(benchmark::kMillisecond);

void BM_Oracle(benchmark::State& state) {
  const BarrierChain chain = double_cusp();
  dirac::OracleOptions domain = dirac::default_oracle_domain(chain);
  domain.steps = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(dirac::integrate_dirac_oracle(chain, 2.0, domain));
}
BENCHMARK(BM_Oracle)->Arg(20000)->Arg(200000)->Unit(benchmark::kMillisecond);

void BM_Sweep(benchmark::State& state) {
  const BarrierChain chain = double_square();
  for (auto _ : state) benchmark::DoNotOptimize(dirac::sweep(chain, 1.01, 3.0, 2000));
}
BENCHMARK(BM_Sweep)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
