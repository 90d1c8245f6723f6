#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dlr/coloring.hpp"
#include "dlr/graph.hpp"
#include "dlr/rational.hpp"
#include "dlr/sim.hpp"

namespace dlr {

// Proper coloring of the line graph with palette 3 Delta^2. Each edge-node
// learns its port labels at both endpoints (one round); the label pair splits
// the line graph into paths and cycles, which are 3-colored. The engine must
// be bound to view.comm.
ProperColoring line_graph_edge_coloring(Engine& engine, const LineGraphView& view);

struct MatchingIterationReport {
  std::uint64_t edges = 0;    // residual edges at the start
  std::uint64_t matched = 0;  // |M_t|
  Rational fractional;        // value of the doubling-freeze point
  std::uint64_t rounds = 0;
};

struct MatchingResult {
  std::vector<std::pair<NodeId, NodeId>> matching;  // (smaller, larger) ascending
  std::vector<MatchingIterationReport> iterations;
  RunMetrics metrics;
};

struct MatchingOptions {
  EngineConfig engine;
  bool oracle_coloring = false;
  Rational eps = Rational(1, 4);
};

MatchingResult maximal_matching(const Graph& g, const MatchingOptions& opts = {});

// Every iteration matches at least c nu of the residual maximum matching nu,
// with c = (1/2 - eps)/4. Returns the least t with (1 - c)^t |E| < 1, plus 1.
std::uint64_t matching_iteration_bound(std::uint64_t edges, const Rational& eps = Rational(1, 4));

}  // namespace dlr
