// Kernel benchmarks: prefix recursion vs quadratic recursion on one channel,
// and the serial reference sweep vs the batched OpenMP sweep on a panel.

#include "hdwn/channel_sweep.hpp"
#include "hdwn/tuple_sum.hpp"

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

namespace {

std::vector<double> channel(std::int64_t T) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> normal;
  std::vector<double> s(static_cast<std::size_t>(T));
  for (double& v : s) v = normal(rng);
  return s;
}

hdwn::SeriesMatrix panel(Eigen::Index p, Eigen::Index T) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> normal;
  hdwn::Matrix x(p, T);
  for (Eigen::Index t = 0; t < T; ++t)
    for (Eigen::Index i = 0; i < p; ++i) x(i, t) = normal(rng);
  return hdwn::SeriesMatrix(x);
}

void BM_PrefixDP(benchmark::State& state) {
  const auto s = channel(state.range(0));
  const hdwn::TupleSpec spec{state.range(0), 1, 6};
  for (auto _ : state) benchmark::DoNotOptimize(hdwn::dp_tuple_product_sum(s, spec));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PrefixDP)->RangeMultiplier(2)->Range(1000, 8000)->Complexity(benchmark::oN);

void BM_QuadraticDP(benchmark::State& state) {
  const auto s = channel(state.range(0));
  const hdwn::TupleSpec spec{state.range(0), 1, 6};
  for (auto _ : state) benchmark::DoNotOptimize(hdwn::dp_tuple_product_sum_quadratic(s, spec));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_QuadraticDP)->RangeMultiplier(2)->Range(1000, 8000)->Complexity(benchmark::oNSquared);

void BM_SweepReference(benchmark::State& state) {
  const auto x = panel(state.range(0), 200);
  for (auto _ : state)
    benchmark::DoNotOptimize(hdwn::sweep_reference(x, hdwn::SweepKind::lagged, 1, 6));
}
BENCHMARK(BM_SweepReference)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_SweepParallel(benchmark::State& state) {
  const auto x = panel(state.range(0), 200);
  for (auto _ : state)
    benchmark::DoNotOptimize(hdwn::sweep_parallel(x, hdwn::SweepKind::lagged, 1, 6));
}
BENCHMARK(BM_SweepParallel)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
