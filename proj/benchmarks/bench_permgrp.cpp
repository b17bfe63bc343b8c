#include <benchmark/benchmark.h>

#include "p2pg/gdgroup.hpp"

namespace {

void BM_ChainOrder(benchmark::State& state) {
  p2pg::GroupSpec g({11, 11});
  for (auto _ : state) {
    p2pg::PermGroup r = p2pg::right_regular(g);
    benchmark::DoNotOptimize(r.order());
  }
}
BENCHMARK(BM_ChainOrder);

void BM_NormalSubgroups(benchmark::State& state) {
  p2pg::PermGroup s4(4, {p2pg::Perm::from_cycles(4, {{0, 1}}),
                         p2pg::Perm::from_cycles(4, {{0, 1, 2, 3}})});
  for (auto _ : state)
    benchmark::DoNotOptimize(s4.normal_subgroups().size());
}
BENCHMARK(BM_NormalSubgroups);

void BM_Membership(benchmark::State& state) {
  p2pg::GroupSpec g({5, 5, 5});
  p2pg::PermGroup r = p2pg::right_regular(g);
  p2pg::Perm probe = r.generators()[0].then(r.generators()[1]);
  benchmark::DoNotOptimize(r.order());  // force the chain
  for (auto _ : state) benchmark::DoNotOptimize(r.contains(probe));
}
BENCHMARK(BM_Membership);

}  // namespace

BENCHMARK_MAIN();
