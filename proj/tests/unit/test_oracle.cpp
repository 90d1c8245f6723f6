#include <doctest.h>

#include "dlr/errors.hpp"
#include "dlr/oracle.hpp"

using namespace dlr;

namespace {
WeightedGraph unit(std::vector<NodeId> nodes, std::vector<std::pair<NodeId, NodeId>> edges) {
  return WeightedGraph::unit(Graph::build(std::move(nodes), edges));
}
}  // namespace

TEST_CASE("brute_max_weight_is: small unit graphs") {
  CHECK(brute_max_weight_is(unit({1, 2, 3}, {{1, 2}, {2, 3}, {1, 3}})).weight == 1);
  CHECK(brute_max_weight_is(unit({1, 2, 3, 4}, {{1, 2}, {2, 3}, {3, 4}})).weight == 2);
  auto star = brute_max_weight_is(unit({0, 1, 2, 3, 4, 5}, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}}));
  CHECK(star.weight == 5);
  CHECK(star.witness == std::vector<Index>{1, 2, 3, 4, 5});
}

TEST_CASE("brute_max_weight_is: weights and budget") {
  auto g = unit({1, 2}, {{1, 2}});
  g.weight = {3, 5};
  CHECK(brute_max_weight_is(g).weight == 5);
  std::vector<NodeId> many(21);
  for (NodeId i = 0; i < 21; ++i) many[i] = i;
  CHECK_THROWS_AS(brute_max_weight_is(unit(many, {})), OracleBudgetExceeded);
}

TEST_CASE("brute_set_cover_opt: small instances") {
  auto one = SetCoverInstance::build({"a"}, {"x"}, {{"a", "x"}}, nullptr);
  CHECK(brute_set_cover_opt(one).cost == 1);
  auto two = SetCoverInstance::build({"1", "2", "3", "4"}, {"p", "q"},
                                     {{"1", "p"}, {"2", "p"}, {"3", "q"}, {"4", "q"}}, nullptr);
  CHECK(brute_set_cover_opt(two).cost == 2);
  // Element h in every set, otherwise disjoint singletons: all sets needed.
  auto hub = SetCoverInstance::build({"h", "1", "2", "3"}, {"a", "b", "c"},
                                     {{"h", "a"}, {"h", "b"}, {"h", "c"}, {"1", "a"}, {"2", "b"}, {"3", "c"}},
                                     nullptr);
  CHECK(brute_set_cover_opt(hub).cost == 3);
}

TEST_CASE("neighborhood_independence: cliques, stars, line graph of a triangle") {
  CHECK(neighborhood_independence(Graph::build({1, 2, 3, 4}, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}})) == 1);
  CHECK(neighborhood_independence(Graph::build({0, 1, 2, 3, 4}, {{0, 1}, {0, 2}, {0, 3}, {0, 4}})) == 4);
  auto lv = line_graph_view(Graph::build({1, 2, 3}, {{1, 2}, {2, 3}, {1, 3}}));
  // The line graph of a triangle is a triangle.
  std::vector<std::pair<NodeId, NodeId>> le;
  for (const auto& e : lv.h.edges()) le.emplace_back(lv.comm->id(e.a), lv.comm->id(e.b));
  std::vector<NodeId> ln;
  for (Index v : lv.h.nodes()) ln.push_back(lv.comm->id(v));
  CHECK(neighborhood_independence(Graph::build(ln, le)) == 1);
}

TEST_CASE("scans: independence, maximality, matchings, coverage") {
  Graph p = Graph::build({1, 2, 3, 4}, {{1, 2}, {2, 3}, {3, 4}});
  CHECK(is_maximal_independent(p, {0, 2}));
  CHECK(!is_maximal_independent(p, {0}));
  CHECK(!is_independent(p, {0, 1}));
  CHECK(is_maximal_matching(p, {{1, 2}}));
  CHECK(!is_maximal_matching(p, {{0, 1}}));
  CHECK(!is_matching(p, {{0, 1}, {1, 2}}));
  CHECK(!is_maximal_matching(p, {}));
  auto inst = SetCoverInstance::build({"a", "b"}, {"x", "y"}, {{"a", "x"}, {"b", "y"}}, nullptr);
  CHECK(uncovered_elements(inst, {0}) == std::vector<Index>{1});
}
