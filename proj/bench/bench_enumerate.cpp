// Serial reference vs OpenMP subgroup enumeration, plus a full p=2 sweep.

#include <benchmark/benchmark.h>

#include "metazeta/classify.hpp"
#include "metazeta/oracle.hpp"

using namespace metazeta;

namespace {

// (m, n, k) for p = 2; the last two are the heaviest groups in the default bound.
const GroupParams kCases[] = {
    GroupParams::make(2, 5, 3, 7),
    GroupParams::make(2, 4, 4, 1),
    GroupParams::make(2, 6, 4, 7),
    GroupParams::make(2, 6, 6, 1),
};

void BM_EnumerateSerial(benchmark::State& state) {
  auto g = build_group(kCases[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_subgroups_serial(g));
  state.SetLabel(g.name());
}

void BM_EnumerateParallel(benchmark::State& state) {
  auto g = build_group(kCases[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_subgroups(g));
  state.SetLabel(g.name());
}

void BM_SweepP2(benchmark::State& state) {
  SweepOptions opts;
  opts.p = 2;
  opts.max_order = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sweep_verify(opts));
}

}  // namespace

BENCHMARK(BM_EnumerateSerial)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnumerateParallel)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepP2)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
