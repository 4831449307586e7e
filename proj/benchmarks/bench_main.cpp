#include <benchmark/benchmark.h>

#include "emso/analytic.hpp"
#include "emso/graph.hpp"
#include "emso/oracle.hpp"
#include "emso/witness.hpp"

namespace {

using namespace emso;

void BM_SampleGnp(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::uint64_t stream = 0;
  for (auto _ : state) {
    Graph g = sample_gnp(n, 0.5, Seed{7}, stream++);
    benchmark::DoNotOptimize(g.edge_count());
  }
}
BENCHMARK(BM_SampleGnp)->Arg(64)->Arg(256)->Arg(1024);

void BM_CountSpecial(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Graph g = sample_gnp(n, 0.5, Seed{11});
  for (auto _ : state) benchmark::DoNotOptimize(count_special(g, 2, 2, 1));
}
BENCHMARK(BM_CountSpecial)->Arg(8)->Arg(10)->Arg(12);

void BM_ExistsExact(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Graph g = sample_gnp(n, 0.5, Seed{3});
  for (auto _ : state) {
    auto res = exists_special(g);
    benchmark::DoNotOptimize(res.nodes);
  }
}
BENCHMARK(BM_ExistsExact)->Arg(8)->Arg(12)->Arg(16);

void BM_ExpectedCount(benchmark::State& state) {
  const std::int64_t n = 29658208;  // second-to-largest tested scale
  for (auto _ : state) benchmark::DoNotOptimize(expected_count(n, 0.5, 20, 21, 19).logmag);
}
BENCHMARK(BM_ExpectedCount);

void BM_FirstMomentSum(benchmark::State& state) {
  const auto n = static_cast<std::int64_t>(seq_small(0.5, static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(first_moment_sum(n, 0.5).sum.logmag);
}
BENCHMARK(BM_FirstMomentSum)->Arg(8)->Arg(12);

void BM_OracleSweep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(exact_moments_all(n, 0.5).size());
}
BENCHMARK(BM_OracleSweep)->Arg(4)->Arg(5);

void BM_KStar(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(k_star_exact(1000000000, 0.5));
}
BENCHMARK(BM_KStar);

}  // namespace

BENCHMARK_MAIN();
