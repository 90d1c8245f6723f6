#pragma once

#include <cstdint>
#include <vector>

#include "dlr/graph.hpp"
#include "dlr/lp.hpp"
#include "dlr/rational.hpp"

namespace dlr {

struct IsOptimum {
  std::uint64_t weight = 0;
  std::vector<Index> witness;  // ascending
};

// Exact maximum-weight independent set; n <= budget.max_nodes.
IsOptimum brute_max_weight_is(const WeightedGraph& g, const OracleBudget& budget = {});

struct CoverOptimum {
  std::uint64_t cost = 0;      // number of sets, or total cost when weighted
  std::vector<Index> witness;  // set indices, ascending
};

// Exact minimum (cost) set cover by branching on the first uncovered
// element; |V| <= budget.max_nodes.
CoverOptimum brute_set_cover_opt(const SetCoverInstance& inst, const OracleBudget& budget = {});

// Largest independent set inside any neighbourhood; max degree <= budget.max_nodes.
Index neighborhood_independence(const Graph& g, const OracleBudget& budget = {});

// S*(w): optimum of the packing LP together with the optimal point.
struct PackingOptimum {
  Rational value;
  std::vector<Rational> x;
  std::vector<Rational> y;  // optimal dual, when requested
};
PackingOptimum packing_optimum(const Graph& g, const std::vector<Rational>& w, bool with_dual = false,
                               const OracleBudget& budget = {});

// Scans.
bool is_independent(const Graph& g, const std::vector<Index>& set);
bool is_maximal_independent(const Graph& g, const std::vector<Index>& set);
bool is_matching(const Graph& g, const std::vector<std::pair<Index, Index>>& m);
bool is_maximal_matching(const Graph& g, const std::vector<std::pair<Index, Index>>& m);
// Elements left uncovered by the chosen sets, ascending.
std::vector<Index> uncovered_elements(const SetCoverInstance& inst, const std::vector<Index>& sets);

}  // namespace dlr
