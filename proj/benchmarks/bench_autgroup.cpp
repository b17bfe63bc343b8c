#include <benchmark/benchmark.h>

#include "p2pg/constructions.hpp"
#include "p2pg/symmetry.hpp"

namespace {

void BM_AutGroupK6(benchmark::State& state) {
  p2pg::NamedGraph g = p2pg::family({p2pg::Family::K6, 0});
  for (auto _ : state)
    benchmark::DoNotOptimize(p2pg::aut_group(g.graph).order());
}
BENCHMARK(BM_AutGroupK6);

void BM_AutGroupFQ4(benchmark::State& state) {
  p2pg::NamedGraph g = p2pg::family({p2pg::Family::FQN, 4});
  for (auto _ : state)
    benchmark::DoNotOptimize(p2pg::aut_group(g.graph).order());
}
BENCHMARK(BM_AutGroupFQ4);

void BM_AutGroupRank2(benchmark::State& state) {
  p2pg::NamedGraph g = p2pg::family({p2pg::Family::CGD1_P2, 11});
  for (auto _ : state)
    benchmark::DoNotOptimize(p2pg::aut_group(g.graph).order());
}
BENCHMARK(BM_AutGroupRank2)->Unit(benchmark::kMillisecond);

void BM_AutGroupRank4(benchmark::State& state) {
  p2pg::NamedGraph g = p2pg::family({p2pg::Family::CGD_P4, 3});
  for (auto _ : state)
    benchmark::DoNotOptimize(p2pg::aut_group(g.graph).order());
}
BENCHMARK(BM_AutGroupRank4)->Unit(benchmark::kMillisecond);

void BM_CanonicalLabeling(benchmark::State& state) {
  p2pg::NamedGraph g = p2pg::family({p2pg::Family::CGD2_P2, 11});
  for (auto _ : state)
    benchmark::DoNotOptimize(p2pg::canonical_labeling(g.graph));
}
BENCHMARK(BM_CanonicalLabeling)->Unit(benchmark::kMillisecond);

}  // namespace
