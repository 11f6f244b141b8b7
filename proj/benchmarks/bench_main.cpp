#include <benchmark/benchmark.h>

#include "acqlab/brute_force.hpp"
#include "acqlab/dense_strategy.hpp"
#include "acqlab/graphgen.hpp"
#include "acqlab/matching.hpp"
#include "acqlab/process.hpp"
#include "acqlab/rng.hpp"

namespace {

using namespace acqlab;

void BM_BuildRgg(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const PointSet points = sample_points(n, 1);
  const double r = dense_radius(n, 100);
  for (auto _ : state) benchmark::DoNotOptimize(build_rgg(points, r));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_BuildRgg)->Arg(4000)->Arg(16000)->Unit(benchmark::kMillisecond);

void BM_RunDenseSchedule(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const GeometricGraph g = build_rgg(sample_points(n, 2), dense_radius(n, 100));
  DenseConfig config;
  config.verify = false;
  const StrategyReport report = dense_schedule(g, config);
  for (auto _ : state) benchmark::DoNotOptimize(run_schedule(g.graph, report.schedule));
  state.counters["rounds"] = static_cast<double>(report.rounds);
}
BENCHMARK(BM_RunDenseSchedule)->Arg(2000)->Arg(4000)->Unit(benchmark::kMillisecond);

void BM_HopcroftKarp(benchmark::State& state) {
  const auto t = static_cast<std::uint32_t>(state.range(0));
  Rng rng(3);
  BipartiteGraph b(t, t);
  for (std::uint32_t l = 0; l < t; ++l)
    for (std::uint32_t r = 0; r < t; ++r)
      if (rng.bernoulli(0.05)) b.add_edge(l, r);
  for (auto _ : state) benchmark::DoNotOptimize(max_matching(b));
}
BENCHMARK(BM_HopcroftKarp)->Arg(200)->Arg(1000)->Unit(benchmark::kMicrosecond);

void BM_BruteForcePath(benchmark::State& state) {
  const Graph g = make_path_graph(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_ac(g));
}
BENCHMARK(BM_BruteForcePath)->DenseRange(4, 6)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
