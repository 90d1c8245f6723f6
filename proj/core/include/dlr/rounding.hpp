#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dlr/coloring.hpp"
#include "dlr/graph.hpp"
#include "dlr/rational.hpp"
#include "dlr/sim.hpp"

namespace dlr {

using Label = std::uint16_t;

// Sparse sigma x sigma table, indexed [label of edge.a][label of edge.b].
struct EdgeTable {
  struct Entry {
    Label a = 0;
    Label b = 0;
    Rational value;
  };
  std::vector<Entry> entries;

  void add(Label a, Label b, const Rational& v);
  bool empty() const { return entries.empty(); }
};

// Utility and cost functions on a multigraph. Node terms are tables over a
// single label; an empty node vector means zero.
struct Valuation {
  std::size_t sigma = 2;
  std::vector<EdgeTable> edge_utility;  // by H-edge index
  std::vector<EdgeTable> edge_cost;
  std::vector<std::vector<Rational>> node_utility;  // by comm index
  std::vector<std::vector<Rational>> node_cost;

  Valuation() = default;
  Valuation(const Multigraph& h, std::size_t sigma);
  void add_node_utility(Index v, Label a, const Rational& x);
  void add_node_cost(Index v, Label a, const Rational& x);
  // Throws PreconditionError on size mismatches, labels out of range or negative values.
  void validate(const Multigraph& h) const;
};

// lambda_a(v) stored at value[v * sigma + a] for comm index v.
struct FractionalAssignment {
  std::size_t sigma = 2;
  std::vector<Rational> value;
  long k = -1;  // all values are multiples of 2^-k; -1 when not known

  FractionalAssignment() = default;
  FractionalAssignment(Index n, std::size_t sigma) : sigma(sigma), value(static_cast<std::size_t>(n) * sigma) {}
  const Rational& at(Index v, std::size_t a) const { return value[v * sigma + a]; }
  Rational& at(Index v, std::size_t a) { return value[v * sigma + a]; }
};

using Labeling = std::vector<Label>;  // by comm index

FractionalAssignment from_labeling(const Multigraph& h, const Labeling& l, std::size_t sigma);
// Throws PreconditionError unless every H node has non-negative values summing to 1.
void validate_assignment(const Multigraph& h, const FractionalAssignment& lam);
// Smallest k >= 0 with every value a multiple of 2^-k, or -1.
long dyadic_level(const Multigraph& h, const FractionalAssignment& lam);
// Smallest non-zero value over H nodes and labels.
Rational smallest_nonzero(const Multigraph& h, const FractionalAssignment& lam);

struct UtilityCost {
  Rational utility;
  Rational cost;
  Rational gain() const { return utility - cost; }
};
UtilityCost evaluate(const Multigraph& h, const Valuation& val, const FractionalAssignment& lam);
UtilityCost evaluate(const Multigraph& h, const Valuation& val, const Labeling& l);

enum class EstimateMode { Exact, Quantized, Adversarial };

struct RoundingOptions {
  EstimateMode estimate = EstimateMode::Exact;
  Aggregation aggregation = Aggregation::Exact;
  bool oracle_coloring = false;               // sequential greedy coloring instead of the distributed one
  const ProperColoring* initial = nullptr;    // proper coloring of H; computed when absent

  // LOCAL: exact sums; CONGEST: quantised estimates and factor-2 aggregation.
  static RoundingOptions for_model(Model m);
};

struct StepReport {
  UtilityCost before;
  UtilityCost after;
  std::uint64_t palette = 0;
  std::uint64_t rounds = 0;
};

// One step: turns a 2^-k-integral assignment into a 2^-(k-1)-integral one.
// Asserts u' - eta c' >= u - eta c - delta (u + eta c).
FractionalAssignment rounding_step(Engine& engine, const Multigraph& h, const Valuation& val,
                                   const FractionalAssignment& lam, const Rational& delta, const Rational& eta,
                                   const ProperColoring& initial, const RoundingOptions& opts,
                                   StepReport* report = nullptr);

struct RoundingReport {
  long k = 0;
  Rational delta;
  std::vector<Rational> potential;  // Phi_0 .. Phi_k
  std::vector<StepReport> steps;
  UtilityCost before;
  UtilityCost after;
};

// Requires u - c >= mu u and a dyadic assignment; returns an integral labeling
// with u - c >= (1 - eps)(u - c) of the input.
Labeling round_to_integral(Engine& engine, const Multigraph& h, const Valuation& val,
                           const FractionalAssignment& lam, const Rational& eps, const Rational& mu,
                           const RoundingOptions& opts = {}, RoundingReport* report = nullptr);

struct PreprocessReport {
  long k = 0;
  UtilityCost before;
  UtilityCost after;
};

// Local rounding to a 2^-k-integral assignment with 2^k >= 9/(eps mu lambda_min).
FractionalAssignment preprocess_fractional(const Multigraph& h, const Valuation& val,
                                           const FractionalAssignment& lam, const Rational& lambda_min,
                                           const Rational& eps, const Rational& mu,
                                           PreprocessReport* report = nullptr);

// Preprocessing with eps/2 followed by rounding with (eps/2, mu/2).
Labeling round_fractional(Engine& engine, const Multigraph& h, const Valuation& val,
                          const FractionalAssignment& lam, const Rational& lambda_min, const Rational& eps,
                          const Rational& mu, const RoundingOptions& opts = {},
                          RoundingReport* report = nullptr, PreprocessReport* pre = nullptr);

// Moves node terms onto edges to fresh dummy neighbours so that the valuation
// is edge-only. Dummies get NodeIds above every existing id and the single
// label 0. Returns the lifted multigraph, valuation and assignment.
struct Lifted {
  std::shared_ptr<const Graph> comm;
  Multigraph h;
  Valuation val;
  FractionalAssignment lam;
};
Lifted lift_node_valuation(const Multigraph& h, const Valuation& val, const FractionalAssignment& lam);

}  // namespace dlr
