#include "cli/json_io.hpp"

#include "dlr/errors.hpp"

namespace dlr::cli {

Json to_json(const Rational& r) { return Json{{"num", r.num().get_str()}, {"den", r.den().get_str()}}; }

Rational rational_from(const Json& j) {
  if (!j.is_object() || !j.contains("num") || !j.contains("den"))
    throw PreconditionError("expected an exact rational {num, den}");
  return Rational::parse(j.at("num").get<std::string>() + "/" + j.at("den").get<std::string>());
}

Json to_json(const UtilityCost& uc) { return Json{{"utility", to_json(uc.utility)}, {"cost", to_json(uc.cost)}}; }

Json graph_json(const WeightedGraph& g) {
  Json nodes = Json::array(), edges = Json::array();
  for (Index v = 0; v < g.graph.size(); ++v) nodes.push_back({{"id", g.graph.id(v)}, {"weight", g.weight[v]}});
  for (auto [a, b] : g.graph.edges()) edges.push_back({g.graph.id(a), g.graph.id(b)});
  return Json{{"kind", "graph"}, {"nodes", nodes}, {"edges", edges}};
}

WeightedGraph graph_from(const Json& j) {
  if (j.value("kind", "") != "graph") throw PreconditionError("instance is not a graph");
  std::vector<NodeId> ids;
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (const auto& n : j.at("nodes")) ids.push_back(n.at("id").get<NodeId>());
  for (const auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<NodeId>(), e.at(1).get<NodeId>());
  WeightedGraph g{Graph::build(ids, edges), {}, nullptr};
  g.weight.assign(g.graph.size(), 1);
  for (const auto& n : j.at("nodes")) g.weight[*g.graph.index_of(n.at("id").get<NodeId>())] = n.at("weight").get<std::uint64_t>();
  return g;
}

Json cover_json(const SetCoverInstance& inst) {
  Json sets = Json::array();
  for (Index s = 0; s < inst.num_sets(); ++s)
    sets.push_back({{"name", inst.set_names[s]}, {"cost", inst.cost[s]}, {"elements", inst.elements_of[s]}});
  return Json{{"kind", "setcover"}, {"weighted", inst.weighted}, {"elements", inst.element_names}, {"sets", sets}};
}

SetCoverInstance cover_from(const Json& j) {
  if (j.value("kind", "") != "setcover") throw PreconditionError("instance is not a set cover instance");
  auto elements = j.at("elements").get<std::vector<std::string>>();
  std::vector<std::string> sets;
  std::vector<std::uint64_t> costs;
  std::vector<std::pair<std::string, std::string>> inc;
  for (const auto& s : j.at("sets")) {
    sets.push_back(s.at("name").get<std::string>());
    costs.push_back(s.at("cost").get<std::uint64_t>());
    for (const auto& e : s.at("elements")) inc.emplace_back(elements.at(e.get<std::size_t>()), sets.back());
  }
  bool weighted = j.at("weighted").get<bool>();
  auto inst = SetCoverInstance::build(elements, sets, inc, weighted ? &costs : nullptr);
  inst.weighted = weighted;
  return inst;
}

Json metrics_json(const RunMetrics& m) {
  Json violations = Json::array(), potential = Json::array();
  for (const auto& v : m.violations) violations.push_back({{"round", v.round}, {"from", v.from}, {"to", v.to}, {"bits", v.bits}});
  for (const auto& [r, p] : m.potential) potential.push_back({{"round", r}, {"value", to_json(p)}});
  return Json{{"rounds", m.rounds},
              {"max_bits", m.max_bits_per_edge_round},
              {"messages", m.messages},
              {"violations", violations},
              {"potential", potential},
              {"objective_num", m.objective.num().get_str()},
              {"objective_den", m.objective.den().get_str()},
              {"oracle_assisted", m.oracle_assisted}};
}

}  // namespace dlr::cli
