#pragma once

#include <cstdint>
#include <vector>

#include "dlr/graph.hpp"
#include "dlr/rational.hpp"
#include "dlr/sim.hpp"

namespace dlr {

// Colors are indexed by comm-graph index; entries of non-H nodes are unused.
struct ProperColoring {
  std::vector<std::uint64_t> color;
  std::uint64_t palette = 0;  // every color is below this (saturating at 2^64-1)
};

enum class DefectKind { PerNode, Average };
enum class Aggregation { Exact, Factor2 };

using EdgeWeights = std::vector<Rational>;  // by H-edge index, non-negative

struct DefectiveColoring {
  std::vector<std::uint64_t> color;
  std::uint64_t palette = 0;
  DefectKind kind = DefectKind::Average;
  Rational delta;
  std::uint64_t stage1_palette = 0;
  std::uint64_t stage2_steps = 0;  // steps until every node committed
};

struct DefectCertificate {
  std::vector<Rational> mono;    // per comm index: weight of incident monochromatic edges
  std::vector<Rational> weight;  // per comm index: weight of incident edges
  Rational mono_total;           // sum over monochromatic edges
  Rational weight_total;         // sum over all edges
  bool ok = false;
};

ProperColoring id_coloring(const Multigraph& h);
bool is_proper(const Multigraph& h, const std::vector<std::uint64_t>& color);
DefectCertificate scan_defect(const Multigraph& h, const EdgeWeights& w, const std::vector<std::uint64_t>& color,
                              const Rational& delta, DefectKind kind);

// Repeated polynomial color reduction until the palette stops shrinking.
ProperColoring linial_coloring(Engine& engine, const Multigraph& h, const ProperColoring& initial);
ProperColoring linial_coloring(Engine& engine, const Multigraph& h);

// Proper 3-coloring when H has maximum degree 2.
ProperColoring three_color_paths_cycles(Engine& engine, const Multigraph& h, const ProperColoring& initial);

// Every node v ends with monochromatic weight below delta * W(v).
DefectiveColoring weighted_defective_coloring(Engine& engine, const Multigraph& h, const EdgeWeights& w,
                                              const Rational& delta, const ProperColoring& initial,
                                              Aggregation agg = Aggregation::Exact);

// Monochromatic weight at most delta times the total weight, palette O(1/delta).
DefectiveColoring average_defective_coloring(Engine& engine, const Multigraph& h, const EdgeWeights& w,
                                             const Rational& delta, const ProperColoring& initial,
                                             Aggregation agg = Aggregation::Exact);

// Sequential reference: palette ceil(1/delta), average defect at most delta.
DefectiveColoring greedy_defective_oracle(const Multigraph& h, const EdgeWeights& w, const Rational& delta);

namespace detail {
bool is_prime(std::uint64_t x);
std::uint64_t next_prime(std::uint64_t x);  // smallest prime >= x
// Smallest r with r^k >= n.
std::uint64_t ceil_root(unsigned __int128 n, unsigned k);

// Polynomials of degree d over F_q indexed by colors (base-q digits).
struct PolyField {
  std::uint64_t q = 2;
  unsigned d = 1;
  void coeffs(std::uint64_t color, std::vector<std::uint64_t>& out) const;
  std::uint64_t eval(const std::vector<std::uint64_t>& a, std::uint64_t x) const;
  // Points where the two (distinct) polynomials agree, ascending.
  void agreements(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b,
                  std::vector<std::uint64_t>& out) const;
};
}  // namespace detail

}  // namespace dlr
