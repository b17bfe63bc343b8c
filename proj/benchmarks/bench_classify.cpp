#include <benchmark/benchmark.h>

#include "p2pg/voltagecover.hpp"

namespace {

void BM_ClassifyBrute(benchmark::State& state) {
  int64_t p = state.range(0);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        p2pg::classify(p, 2, p2pg::ClassifyStrategy::Brute).size());
}
BENCHMARK(BM_ClassifyBrute)->Arg(11)->Arg(19)->Arg(31)->Unit(benchmark::kMillisecond);

void BM_ClassifyAnalytic(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(
        p2pg::classify(11, 2, p2pg::ClassifyStrategy::Analytic).size());
}
BENCHMARK(BM_ClassifyAnalytic);

void BM_DerivedCover(benchmark::State& state) {
  p2pg::Dip5Voltage z = p2pg::family_voltage({p2pg::Family::CGD_P3, 11});
  for (auto _ : state) benchmark::DoNotOptimize(p2pg::derived(z).edge_count());
}
BENCHMARK(BM_DerivedCover)->Unit(benchmark::kMillisecond);

void BM_LiftingGroup(benchmark::State& state) {
  p2pg::Dip5Voltage z = p2pg::family_voltage({p2pg::Family::CGD2_P2, 19});
  for (auto _ : state)
    benchmark::DoNotOptimize(p2pg::lifting_group(z).order());
}
BENCHMARK(BM_LiftingGroup);

}  // namespace
