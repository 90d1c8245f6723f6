#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "dlr/graph.hpp"
#include "dlr/lp.hpp"
#include "dlr/rational.hpp"
#include "dlr/rounding.hpp"
#include "dlr/sim.hpp"

namespace dlr {

// Independent set problems live on a multigraph H over a communication graph:
// H = G for plain graphs, the line graph for matchings. Weights and fractional
// values are indexed by comm index; entries outside H are ignored.
struct IsInstance {
  std::shared_ptr<const Graph> comm;
  Multigraph h;
  std::vector<std::uint64_t> weight;
  std::shared_ptr<const LineGraphInfo> line;  // set for line-graph instances

  static IsInstance of(const WeightedGraph& g);
  std::uint64_t weight_of(const std::vector<Index>& set) const;
  std::uint64_t total_weight() const;
};

// Label 1 means "in". Node utility w(v) on label 1, edge cost min{w(u), w(v)}
// when both endpoints are in.
Valuation is_utility_cost(const IsInstance& inst);
// u(x) = sum w(v) x_v and c(x) = sum over edges of min{w(u), w(v)} x_u x_v.
UtilityCost is_value(const IsInstance& inst, const std::vector<Rational>& x);

// Keeps every selected node without a selected H-neighbour of larger
// (weight, NodeId). Asserts independence and w(I) >= u(x) - c(x). Two rounds.
std::vector<Index> extract_is(Engine& engine, const IsInstance& inst, const std::vector<char>& selected);

struct IsRound {
  std::vector<Index> set;  // comm indices, ascending
  std::uint64_t weight = 0;
  UtilityCost fractional;  // at the input x
  Rational bound;          // (1/2 - eps) u(x), asserted
};

// Requires u(x) >= 2 c(x) and eps in (0, 1). Shifts x towards 1 by eps/(2 Delta)
// (renormalised into [0, 1]), rounds, extracts.
IsRound basic_is_round(Engine& engine, const IsInstance& inst, const std::vector<Rational>& x, const Rational& eps,
                       const RoundingOptions& opts);

enum class PackingBackend { CentralExact, DoublingFreeze };

struct PackingSolution {
  std::vector<Rational> x;  // feasible for the packing LP, by comm index
  Rational value;           // sum w(v) x_v
  Rational upper;           // proven upper bound on S*(w): S* itself, or 4 * value
};

// CentralExact solves the LP exactly outside the engine and flags the run as
// oracle-assisted. DoublingFreeze needs a unit-weight line-graph instance.
PackingSolution solve_packing_lp(Engine& engine, const IsInstance& inst, PackingBackend backend,
                                 const OracleBudget& budget = {});

// Rounds a feasible LP point with value >= upper / 2 (central exact always
// qualifies); asserts w(I) >= upper / 4 >= S*(w) / 4.
IsRound lp_guided_is(Engine& engine, const IsInstance& inst, const PackingSolution& lp, const RoundingOptions& opts);

struct LocalRatioStep {
  std::vector<Index> set;               // I_i, positive residual weight only
  std::vector<Rational> weight;         // w_i by comm index
  std::vector<Rational> deducted;       // w'_i = w_i - w_{i+1}
  Rational gained;                      // w_i(I_i)
  Rational reference;                   // S*(w_i), or w_i(V)/(Delta+1) for the Turan variant
  Rational upsilon;                     // Upsilon_i after this step
};

struct LocalRatioTrace {
  Rational rho;
  Rational upsilon0;
  std::vector<LocalRatioStep> steps;
};

// w_{i+1}(u) = max{0, w_i(u) - sum of w_i over N+(u) intersected with I_i}.
std::vector<Rational> deduct_weights(const IsInstance& inst, const std::vector<Rational>& w,
                                     const std::vector<Index>& set);

// Reverse greedy union of I_T, ..., I_1. Asserts w(I) >= sum w_i(I_i).
std::vector<Index> local_ratio_combine(Engine& engine, const IsInstance& inst,
                                       const std::vector<LocalRatioStep>& steps);

struct WisResult {
  std::vector<NodeId> independent_set;  // ascending
  std::uint64_t weight = 0;
  Rational bound;  // asserted lower bound on the weight
  LocalRatioTrace trace;
  std::vector<Rational> x;  // fractional input of single-shot algorithms, by index
  RunMetrics metrics;
};

struct WisOptions {
  EngineConfig engine;
  Rational eps = Rational(1, 10);
  bool oracle_coloring = false;
  OracleBudget budget;
};

// (1/2 - eps) u(x) for a caller-supplied x with u >= 2c.
WisResult wis_basic(const WeightedGraph& g, const std::vector<Rational>& x, const WisOptions& opts = {});
// S*(w)/4 through the exact packing LP.
WisResult wis_lp_guided(const WeightedGraph& g, const WisOptions& opts = {});
// w(I) >= (1 - eps) S*(w), hence >= (1 - eps)/beta OPT.
WisResult beta_approx_is(const WeightedGraph& g, const WisOptions& opts = {});
// w(I) >= (1 - eps) w(V)/(Delta + 1).
WisResult turan_fraction_is(const WeightedGraph& g, const WisOptions& opts = {});
// w(I) >= (1/2 - eps) sum w(v)^2 / W_v with W_v = w(N+(v)).
WisResult caro_wei_is(const WeightedGraph& g, const WisOptions& opts = {});

// ceil(ln(1/eps)/rho), raised if needed until (1 - rho)^T <= eps holds exactly.
std::uint64_t boosting_rounds(const Rational& eps, const Rational& rho);
// Sum of w(v)^2 / W_v.
Rational caro_wei_bound(const WeightedGraph& g);

}  // namespace dlr
