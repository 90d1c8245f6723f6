#include <doctest.h>

#include "dlr/indepset.hpp"
#include "dlr/matching.hpp"
#include "dlr/oracle.hpp"
#include "support.hpp"

using namespace dlr;

namespace {

std::vector<std::pair<Index, Index>> to_indices(const Graph& g, const std::vector<std::pair<NodeId, NodeId>>& m) {
  std::vector<std::pair<Index, Index>> out;
  for (auto [a, b] : m) out.emplace_back(*g.index_of(a), *g.index_of(b));
  return out;
}

IsInstance line_instance(const LineGraphView& view) {
  IsInstance inst;
  inst.comm = view.comm;
  inst.h = view.h;
  inst.weight.assign(view.comm->size(), 1);
  inst.line = view.info;
  return inst;
}

}  // namespace

TEST_CASE("line_graph_edge_coloring is proper with palette 3 Delta^2") {
  std::mt19937_64 rng(17);
  for (int it = 0; it < 8; ++it) {
    auto g = dlr::testing::random_graph(rng, 40, 120, 7);
    auto view = line_graph_view(*g);
    Engine e(*view.comm);
    auto c = line_graph_edge_coloring(e, view);
    CHECK(is_proper(view.h, c.color));
    Index delta = 0;
    for (Index v = 0; v < g->size(); ++v) delta = std::max(delta, g->degree(v));
    CHECK(c.palette == 3ull * delta * delta);
    for (Index r : view.h.nodes()) CHECK(c.color[r] < c.palette);
  }
}

TEST_CASE("doubling-freeze: feasible and within 4 of the optimum") {
  Graph p3 = Graph::build({1, 2, 3}, {{1, 2}, {2, 3}});
  auto view = line_graph_view(p3);
  auto inst = line_instance(view);
  Engine e(*view.comm);
  auto s = solve_packing_lp(e, inst, PackingBackend::DoublingFreeze);
  CHECK_FALSE(e.metrics().oracle_assisted);
  // Line graph of P3 is an edge: fractional optimum 1.
  CHECK(Rational(4) * s.value >= Rational(1));
  CHECK(s.upper == Rational(4) * s.value);

  std::mt19937_64 rng(2);
  for (int it = 0; it < 6; ++it) {
    auto g = dlr::testing::random_graph(rng, 14, 24, 5);
    auto v = line_graph_view(*g);
    auto li = line_instance(v);
    Engine ev(*v.comm);
    auto d = solve_packing_lp(ev, li, PackingBackend::DoublingFreeze);
    // Exact optimum on the explicit line graph.
    std::vector<std::pair<Index, Index>> le;
    for (const auto& he : v.h.edges()) le.emplace_back(he.a - v.info->base_nodes, he.b - v.info->base_nodes);
    std::vector<NodeId> lids(v.h.nodes().size());
    for (Index i = 0; i < lids.size(); ++i) lids[i] = i;
    std::sort(le.begin(), le.end());
    le.erase(std::unique(le.begin(), le.end()), le.end());
    Graph lg = Graph::from_indices(lids, le);
    auto opt = packing_optimum(lg, std::vector<Rational>(lids.size(), Rational(1)));
    CHECK(Rational(4) * d.value >= opt.value);
    CHECK(d.value <= opt.value);
  }
}

TEST_CASE("maximal_matching: small graphs") {
  Graph edge = Graph::build({1, 2}, {{1, 2}});
  auto r = maximal_matching(edge);
  CHECK(r.matching == std::vector<std::pair<NodeId, NodeId>>{{1, 2}});
  CHECK(r.iterations.size() == 1);

  Graph p4 = Graph::build({1, 2, 3, 4}, {{1, 2}, {2, 3}, {3, 4}});
  auto p = maximal_matching(p4);
  CHECK(is_maximal_matching(p4, to_indices(p4, p.matching)));

  Graph empty = Graph::build({3, 4}, {});
  CHECK(maximal_matching(empty).matching.empty());

  Graph two = Graph::build({1, 2, 3, 4}, {{1, 2}, {3, 4}});
  CHECK(maximal_matching(two).matching.size() == 2);
}

TEST_CASE("maximal_matching: random graphs in both models") {
  std::mt19937_64 rng(31);
  for (int it = 0; it < 4; ++it) {
    auto g = dlr::testing::random_graph(rng, 60 + rng() % 60, 200, 8, 3);
    for (Model model : {Model::Local, Model::Congest}) {
      MatchingOptions o;
      o.engine.model = model;
      auto r = maximal_matching(*g, o);
      CHECK(is_maximal_matching(*g, to_indices(*g, r.matching)));
      CHECK(r.iterations.size() <= matching_iteration_bound(g->num_edges()));
      if (model == Model::Congest) CHECK(r.metrics.violations.empty());
    }
  }
}

TEST_CASE("matching_iteration_bound") {
  CHECK(matching_iteration_bound(0) == 1);
  CHECK(matching_iteration_bound(1) == 2);
  // (1 - 1/16)^t < 1/100 first at t = 72.
  CHECK(matching_iteration_bound(100) == 73);
}
