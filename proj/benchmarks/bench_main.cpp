#include <benchmark/benchmark.h>

#include "hardctl/condorcet.hpp"
#include "hardctl/control.hpp"
#include "hardctl/dodgson.hpp"
#include "hardctl/generate.hpp"
#include "hardctl/graph.hpp"
#include "hardctl/kemeny.hpp"

using namespace hardctl;

static void BM_KemenyWinners(benchmark::State& state) {
  Rng rng(1);
  Election e = random_election(static_cast<int>(state.range(0)), 15, rng);
  for (auto _ : state) benchmark::DoNotOptimize(kemeny_winners(e, KemenyVariant::kemeny));
}
BENCHMARK(BM_KemenyWinners)->Arg(8)->Arg(12)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);

static void BM_FeedbackArcSet(benchmark::State& state) {
  Rng rng(2);
  Digraph d = random_digraph(static_cast<int>(state.range(0)), 50, rng);
  for (auto _ : state) benchmark::DoNotOptimize(min_feedback_arc_set(d));
}
BENCHMARK(BM_FeedbackArcSet)->Arg(10)->Arg(16)->Arg(22)->Unit(benchmark::kMillisecond);

static void BM_VertexCover(benchmark::State& state) {
  Rng rng(3);
  Graph g = random_graph(static_cast<int>(state.range(0)), 30, rng);
  for (auto _ : state) benchmark::DoNotOptimize(min_vertex_cover(g));
}
BENCHMARK(BM_VertexCover)->Arg(10)->Arg(20)->Arg(30)->Unit(benchmark::kMicrosecond);

static void BM_DodgsonScore(benchmark::State& state) {
  Rng rng(4);
  Election e = random_election(static_cast<int>(state.range(0)), 9, rng);
  for (auto _ : state) benchmark::DoNotOptimize(dodgson_winners(e));
}
BENCHMARK(BM_DodgsonScore)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_YoungScore(benchmark::State& state) {
  Rng rng(5);
  Election e = random_election(5, static_cast<int>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(young_winners(e));
}
BENCHMARK(BM_YoungScore)->Arg(6)->Arg(12)->Arg(18)->Unit(benchmark::kMillisecond);

static void BM_KemenyCcac(benchmark::State& state) {
  Rng rng(6);
  ControlInstance inst = random_ccac(static_cast<int>(state.range(0)), 3, 9, 2, rng);
  for (auto _ : state) benchmark::DoNotOptimize(solve_control(inst));
}
BENCHMARK(BM_KemenyCcac)->Arg(5)->Arg(8)->Arg(11)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
