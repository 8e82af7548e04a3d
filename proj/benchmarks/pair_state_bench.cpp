#include <benchmark/benchmark.h>

#include "ramanpair/bell.hpp"
#include "ramanpair/entanglement.hpp"
#include "ramanpair/geometry.hpp"
#include "ramanpair/pair_state.hpp"

using namespace ramanpair;

namespace {

const AtomSpec& sodium() {
  static const AtomSpec spec = AtomSpec::sodium();
  return spec;
}

PumpConfig pump() {
  PumpConfig p;
  p.direction = {0.0, 1.0, 0.0};
  p.polarization = {Complex(0.0), Complex(0.0), Complex(1.0)};
  p.omega_L = sodium().resonance() - kTwoPi * 10e9;
  p.atom_number = 1e5;
  return p;
}

const CondensateSpinor condensate = CondensateSpinor::single({HalfInt::integer(1), HalfInt::integer(0)});

void BM_BuildPairState(benchmark::State& state) {
  const PumpConfig p = pump();
  const Vec3 k = direction_from_angles(0.7, 1.3);
  for (auto _ : state) benchmark::DoNotOptimize(build_pair_state(sodium(), p, condensate, k));
}
BENCHMARK(BM_BuildPairState);

void BM_EntanglementEntropy(benchmark::State& state) {
  const PairState s = build_pair_state(sodium(), pump(), condensate, direction_from_angles(0.7, 1.3));
  for (auto _ : state) benchmark::DoNotOptimize(entanglement_entropy(s));
}
BENCHMARK(BM_EntanglementEntropy);

void BM_ScanSphere(benchmark::State& state) {
  const double deg = static_cast<double>(state.range(0));
  const PumpConfig p = pump();
  const Measure m{MeasureKind::concurrence_after_filter, HalfInt::integer(1)};
  std::size_t nodes = 0;
  for (auto _ : state) {
    const ScanMap map = scan_sphere(sodium(), p, condensate, deg * kPi / 180.0, m, {}, 1);
    nodes = map.nodes.size();
    benchmark::DoNotOptimize(map.nodes.data());
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * nodes));
}
BENCHMARK(BM_ScanSphere)->Arg(10)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_OptimizeChsh(benchmark::State& state) {
  const PairState s = spectral_filter(build_pair_state(sodium(), pump(), condensate, {0.0, 0.0, 1.0}), HalfInt::integer(1));
  for (auto _ : state) benchmark::DoNotOptimize(optimize_chsh(s));
}
BENCHMARK(BM_OptimizeChsh)->Unit(benchmark::kMillisecond);

void BM_SampleEvents(benchmark::State& state) {
  const PairState s = spectral_filter(build_pair_state(sodium(), pump(), condensate, {0.0, 0.0, 1.0}), HalfInt::integer(1));
  const ChshSettings st{0.0, kPi / 4, kPi / 8, 3 * kPi / 8};
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sample_events(s, st, n, 7));
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * n));
}
BENCHMARK(BM_SampleEvents)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
