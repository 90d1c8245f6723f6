// Wall-clock benchmarks. Round counts of the simulated algorithms are
// reported as counters next to the timings.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <memory>
#include <vector>

#include "dlr/coloring.hpp"
#include "dlr/generate.hpp"
#include "dlr/indepset.hpp"
#include "dlr/matching.hpp"
#include "dlr/mis.hpp"
#include "dlr/oracle.hpp"
#include "dlr/rational.hpp"
#include "dlr/setcover.hpp"
#include "dlr/sim.hpp"

namespace {

using namespace dlr;

WeightedGraph graph(Index n, Index max_degree, std::uint64_t max_weight = 1, NodeId id_stride = 1) {
  GraphSpec spec;
  spec.id_stride = id_stride;
  spec.n = n;
  spec.m = std::uint64_t{n} * max_degree / 3;
  spec.max_degree = max_degree;
  spec.max_weight = max_weight;
  spec.seed = 7;
  return generate_graph(spec);
}

void BM_RationalSmall(benchmark::State& state) {
  Rational acc;
  for (auto _ : state) {
    for (int i = 1; i <= 64; ++i) acc = (acc + Rational(1, i)) * Rational(i, i + 1);
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_RationalSmall);

void BM_RationalPow(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(pow(Rational(101, 100), static_cast<unsigned long>(state.range(0))));
}
BENCHMARK(BM_RationalPow)->Arg(50)->Arg(250)->Arg(1000);

void BM_Linial(benchmark::State& state) {
  // Sparse ids so that the initial palette is far above O(Delta^2).
  auto g = std::make_shared<const Graph>(graph(static_cast<Index>(state.range(0)), 16, 1, 1000003).graph);
  const Multigraph h = Multigraph::from_graph(g);
  std::uint64_t rounds = 0;
  for (auto _ : state) {
    Engine engine(*g, EngineConfig{Model::Congest});
    benchmark::DoNotOptimize(linial_coloring(engine, h));
    rounds = engine.metrics().rounds;
  }
  state.counters["rounds"] = static_cast<double>(rounds);
}
BENCHMARK(BM_Linial)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_DefectiveColoring(benchmark::State& state) {
  auto g = std::make_shared<const Graph>(graph(2000, 16).graph);
  const Multigraph h = Multigraph::from_graph(g);
  const EdgeWeights w(h.num_edges(), Rational(1));
  const Rational delta(1, state.range(0));
  std::uint64_t rounds = 0, palette = 0;
  for (auto _ : state) {
    Engine engine(*g);
    const ProperColoring init = linial_coloring(engine, h);
    DefectiveColoring c = average_defective_coloring(engine, h, w, delta, init);
    rounds = engine.metrics().rounds;
    palette = c.palette;
  }
  state.counters["rounds"] = static_cast<double>(rounds);
  state.counters["palette"] = static_cast<double>(palette);
}
BENCHMARK(BM_DefectiveColoring)->Arg(2)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_Mis(benchmark::State& state) {
  const Graph g = graph(static_cast<Index>(state.range(0)), static_cast<Index>(state.range(1))).graph;
  MisOptions opts;
  opts.engine.model = Model::Congest;
  std::uint64_t rounds = 0, iterations = 0;
  for (auto _ : state) {
    MisResult r = mis(g, opts);
    rounds = r.metrics.rounds;
    iterations = r.iterations.size();
  }
  state.counters["rounds"] = static_cast<double>(rounds);
  state.counters["iterations"] = static_cast<double>(iterations);
}
BENCHMARK(BM_Mis)->Args({500, 8})->Args({500, 32})->Args({2000, 8})->Args({2000, 32})->Unit(benchmark::kMillisecond);

void BM_LubyBaseline(benchmark::State& state) {
  const Graph g = graph(static_cast<Index>(state.range(0)), 32).graph;
  for (auto _ : state) benchmark::DoNotOptimize(luby_randomized_baseline(g, 1));
}
BENCHMARK(BM_LubyBaseline)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_Matching(benchmark::State& state) {
  const Graph g = graph(static_cast<Index>(state.range(0)), 10).graph;
  std::uint64_t rounds = 0;
  for (auto _ : state) rounds = maximal_matching(g).metrics.rounds;
  state.counters["rounds"] = static_cast<double>(rounds);
}
BENCHMARK(BM_Matching)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_TuranIs(benchmark::State& state) {
  const WeightedGraph g = graph(static_cast<Index>(state.range(0)), 12, 100);
  for (auto _ : state) benchmark::DoNotOptimize(turan_fraction_is(g));
}
BENCHMARK(BM_TuranIs)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_PackingLp(benchmark::State& state) {
  const WeightedGraph g = graph(static_cast<Index>(state.range(0)), 8, 100);
  std::vector<Rational> w(g.graph.size());
  for (Index v = 0; v < g.graph.size(); ++v) w[v] = Rational(g.weight[v]);
  for (auto _ : state) benchmark::DoNotOptimize(packing_optimum(g.graph, w));
}
BENCHMARK(BM_PackingLp)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_SetCover(benchmark::State& state) {
  SetCoverSpec spec;
  spec.elements = static_cast<Index>(state.range(0));
  spec.sets = spec.elements / 2;
  spec.max_set_size = 6;
  spec.max_element_degree = 3;
  spec.seed = 3;
  const SetCoverInstance inst = generate_set_cover(spec);
  std::uint64_t rounds = 0;
  for (auto _ : state) rounds = set_cover(inst).metrics.rounds;
  state.counters["rounds"] = static_cast<double>(rounds);
}
BENCHMARK(BM_SetCover)->Arg(100)->Arg(300)->Unit(benchmark::kMillisecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
