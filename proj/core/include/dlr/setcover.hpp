#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "dlr/coloring.hpp"
#include "dlr/graph.hpp"
#include "dlr/lp.hpp"
#include "dlr/rational.hpp"
#include "dlr/rounding.hpp"
#include "dlr/sim.hpp"

namespace dlr {

// x_v = x0_v / 10, or 0 when x0_v <= 1/(2t). Asserts x_v in {0} u [1/(20t), 1/10]
// and sum over N(u) of x_v >= 1/20 for every element u.
std::vector<Rational> build_scaled_x(const SetCoverInstance& inst, const std::vector<Rational>& x0);

// N*(u): neighbours of u in ascending set index, added while the running sum
// is below 1/20. Asserts 1/20 <= sum over N*(u) <= 1/5.
std::vector<std::vector<Index>> select_n_star(const SetCoverInstance& inst, const std::vector<Rational>& x);

// Every set with x0_v >= 1/t; covers U whenever x0 is a fractional cover.
std::vector<Index> threshold_cover(const SetCoverInstance& inst, const std::vector<Rational>& x0);

// Smallest tau >= 1 with 1.01^tau >= bound (bound = s, or s W when weighted).
std::uint64_t cover_tau(std::uint64_t bound);

// Everything an iteration needs; built once per run.
struct CoverState {
  const SetCoverInstance* inst = nullptr;
  std::shared_ptr<const Graph> comm;  // sets first, then elements
  std::vector<Rational> x;            // per set
  std::vector<std::vector<Index>> n_star;
  std::uint64_t tau = 0;
  Rational opt_bound;    // certified lower bound on OPT
  Rational unit_weight;  // W when weighted, else 1: weight of one element in the potential
  ProperColoring coloring;  // proper on the d2-multigraph of all N*(u)
  Rational lambda_min;
};

struct CoverIterationReport {
  std::uint64_t i = 0;
  std::uint64_t uncovered = 0;      // |U_i|
  std::uint64_t newly_covered = 0;  // |U_i| - |U_{i+1}|
  std::uint64_t selected = 0;       // |V'_i|
  std::uint64_t selected_cost = 0;  // w(V'_i)
  Rational scale;                   // unit_weight / 1.01^(tau - i)
  UtilityCost fractional;
  UtilityCost integral;
  std::uint64_t rounds = 0;
  bool skipped = false;  // U_i was empty
};

// Rounds x against U_i (uncovered[u] != 0) and returns V'_i. Asserts
// c(x) <= u(x)/5 and scale (|U_i| - |U_{i+1}|) - w(V'_i) >= scale |U_i|/50 - 3 OPT_bound.
std::vector<Index> cover_iteration(Engine& engine, const CoverState& state, std::uint64_t i,
                                   const std::vector<char>& uncovered, const RoundingOptions& opts,
                                   CoverIterationReport* report = nullptr);

// Phi_i = scale_i |U_i| + w(V'_1) + ... + w(V'_{i-1}) + 3 (tau - i) OPT_bound.
Rational cover_potential(const CoverState& state, std::uint64_t i, std::uint64_t uncovered,
                         const Rational& spent);

struct SetCoverOptions {
  EngineConfig engine;
  CoverBackend backend = CoverBackend::CentralExact;
  bool oracle_coloring = false;
  OracleBudget budget;
};

struct SetCoverResult {
  std::vector<Index> cover;       // set indices, ascending
  std::vector<Index> completion;  // V'', ascending
  std::uint64_t cost = 0;
  std::uint64_t completion_cost = 0;
  std::uint64_t tau = 0;
  Rational opt_bound;
  Rational bound;            // asserted: cost <= unit_weight |U| / 1.01^(tau-1) + 3 tau OPT_bound
  std::vector<Rational> phi;  // Phi_1 .. Phi_{tau+1}
  std::vector<CoverIterationReport> iterations;
  FractionalCover fractional;
  RunMetrics metrics;
};

SetCoverResult set_cover(const SetCoverInstance& inst, const SetCoverOptions& opts = {});

}  // namespace dlr
