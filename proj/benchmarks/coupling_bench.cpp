#include <benchmark/benchmark.h>

#include "ramanpair/angular_momentum.hpp"
#include "ramanpair/atomic_model.hpp"

using namespace ramanpair;

namespace {

void BM_Wigner6j(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const HalfInt j = HalfInt::from_twice(n);
  for (auto _ : state) benchmark::DoNotOptimize(wigner_6j(j, j, j, j, j, j));
  state.SetLabel("all six doubled j = " + std::to_string(n));
}
BENCHMARK(BM_Wigner6j)->Arg(2)->Arg(8)->Arg(20)->Arg(40);

void BM_ClebschGordan(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const HalfInt j = HalfInt::from_twice(n), zero = HalfInt::integer(0);
  for (auto _ : state) benchmark::DoNotOptimize(clebsch_gordan(j, zero, j, zero, j, zero));
}
BENCHMARK(BM_ClebschGordan)->Arg(4)->Arg(20)->Arg(40);

// Includes the full dipole-table evaluation done at construction.
void BM_SodiumSpec(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(AtomSpec::sodium());
}
BENCHMARK(BM_SodiumSpec);

}  // namespace
