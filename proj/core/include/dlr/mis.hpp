#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "dlr/graph.hpp"
#include "dlr/rational.hpp"
#include "dlr/rounding.hpp"
#include "dlr/sim.hpp"

namespace dlr {

// Marking probabilities, good nodes and IN* sets of one Luby iteration.
// Vectors are indexed by the graph's indices.
struct LubyIteration {
  Orientation orient;
  std::vector<char> good;  // 3 |IN(v)| >= deg(v)
  std::vector<std::vector<Index>> in_star;
  std::vector<Rational> x;  // 1 / (20 deg(v))
};

// Requires a graph without isolated nodes.
LubyIteration classify_and_select_instar(const Graph& g);

struct MisValuation {
  Multigraph h;
  Valuation val;
  FractionalAssignment x;
  Rational lambda_min;
};

// Label 1 means marked. Utility deg(v)/2 per u in IN*(v); cost deg(v)/2 per
// ordered pair of IN*(v) (one virtual edge of cost deg(v) managed by v) and
// per (u, w) with u in IN*(v), w in OUT(u).
MisValuation build_mis_valuation(const std::shared_ptr<const Graph>& g, const LubyIteration& it);

struct MisIterationReport {
  std::uint64_t nodes = 0;
  std::uint64_t edges = 0;
  std::uint64_t removed_edges = 0;
  std::uint64_t joined = 0;
  std::uint64_t good_degree_sum = 0;
  UtilityCost fractional;  // at x
  UtilityCost integral;    // at the rounded marking
  std::uint64_t rounds = 0;
};

struct MisIterationResult {
  std::vector<Index> joined;    // indices of g, ascending
  std::vector<char> removed;    // joined nodes and their neighbours
  MisIterationReport report;
};

// One derandomized iteration on a graph without isolated nodes.
MisIterationResult luby_derandomized_iteration(Engine& engine, const std::shared_ptr<const Graph>& g,
                                               const RoundingOptions& opts);

struct MisResult {
  std::vector<NodeId> independent_set;  // ascending
  std::vector<MisIterationReport> iterations;
  RunMetrics metrics;
};

struct MisOptions {
  EngineConfig engine;
  bool oracle_coloring = false;
};

MisResult mis(const Graph& g, const MisOptions& opts = {});

// Randomized Luby with the same marking probabilities and conflict rule.
MisResult luby_randomized_baseline(const Graph& g, std::uint64_t seed);

// ceil(log_{500/499} |E|) + 1.
std::uint64_t mis_iteration_bound(std::uint64_t edges);

}  // namespace dlr
