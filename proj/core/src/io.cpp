#include "dlr/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <vector>

#include "dlr/errors.hpp"

namespace dlr {

namespace {

// Whitespace-separated tokens of one line, without comments.
std::vector<std::string> tokens(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line.substr(0, line.find('#')));
  for (std::string t; ss >> t;) out.push_back(t);
  return out;
}

std::uint64_t to_u64(const std::string& s, std::size_t line, const char* what) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw ParseError(line, std::string("bad ") + what + " '" + s + "'");
  return v;
}

std::uint64_t to_weight(const std::string& s, std::size_t line) {
  std::uint64_t w = to_u64(s, line, "weight");
  if (w == 0) throw ParseError(line, "weights must be positive");
  return w;
}

template <class Fn>
void for_each_line(std::istream& in, Fn&& fn) {
  std::string line;
  for (std::size_t no = 1; std::getline(in, line); ++no) {
    auto t = tokens(line);
    if (!t.empty()) fn(no, t);
  }
}

}  // namespace

WeightedGraph parse_edge_list(std::istream& in) {
  std::map<NodeId, std::uint64_t> weight;
  std::set<NodeId> weighted_line;
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::set<std::pair<NodeId, NodeId>> seen;
  for_each_line(in, [&](std::size_t no, const std::vector<std::string>& t) {
    if (t[0] == "n") {
      if (t.size() < 2 || t.size() > 3) throw ParseError(no, "expected 'n <id> [weight]'");
      NodeId id = to_u64(t[1], no, "node id");
      if (!weighted_line.insert(id).second) throw ParseError(no, "duplicate node line for " + t[1]);
      weight[id] = t.size() == 3 ? to_weight(t[2], no) : 1;
      return;
    }
    if (t.size() < 2 || t.size() > 3) throw ParseError(no, "expected 'u v [w]'");
    NodeId u = to_u64(t[0], no, "node id"), v = to_u64(t[1], no, "node id");
    if (t.size() == 3) to_u64(t[2], no, "edge weight");
    if (u == v) throw ParseError(no, "self-loop at node " + t[0]);
    if (!seen.insert({std::min(u, v), std::max(u, v)}).second) throw ParseError(no, "duplicate edge " + t[0] + " " + t[1]);
    weight.emplace(u, 1);
    weight.emplace(v, 1);
    edges.emplace_back(u, v);
  });
  std::vector<NodeId> ids;
  for (const auto& [id, w] : weight) ids.push_back(id);
  WeightedGraph g;
  g.graph = Graph::build(ids, edges);
  for (const auto& [id, w] : weight) g.weight.push_back(w);
  return g;
}

void apply_node_weights(WeightedGraph& g, std::istream& in) {
  std::set<NodeId> seen;
  for_each_line(in, [&](std::size_t no, const std::vector<std::string>& t) {
    if (t.size() != 3 || t[0] != "n") throw ParseError(no, "expected 'n <id> <weight>'");
    NodeId id = to_u64(t[1], no, "node id");
    auto idx = g.graph.index_of(id);
    if (!idx) throw ParseError(no, "unknown node " + t[1]);
    if (!seen.insert(id).second) throw ParseError(no, "duplicate weight for node " + t[1]);
    g.weight[*idx] = to_weight(t[2], no);
  });
}

SetCoverInstance parse_set_cover(std::istream& in) {
  std::vector<std::string> elements, sets;
  std::vector<std::uint64_t> cost;
  std::set<std::string> set_seen;
  std::map<std::string, std::size_t> element_seen;  // name -> declaring line
  std::vector<std::pair<std::string, std::string>> inc;
  std::vector<std::size_t> inc_line;
  bool weighted = false;
  for_each_line(in, [&](std::size_t no, const std::vector<std::string>& t) {
    if (t[0] == "e" && t.size() == 2) {
      if (!element_seen.emplace(t[1], no).second) throw ParseError(no, "duplicate element " + t[1]);
      elements.push_back(t[1]);
    } else if (t[0] == "s" && (t.size() == 2 || t.size() == 3)) {
      if (!set_seen.insert(t[1]).second) throw ParseError(no, "duplicate set " + t[1]);
      sets.push_back(t[1]);
      cost.push_back(t.size() == 3 ? to_weight(t[2], no) : 1);
      weighted = weighted || t.size() == 3;
    } else if (t[0] == "c" && t.size() == 3) {
      inc.emplace_back(t[1], t[2]);
      inc_line.push_back(no);
    } else {
      throw ParseError(no, "expected 'e <id>', 's <id> [cost]' or 'c <element> <set>'");
    }
  });
  for (std::size_t i = 0; i < inc.size(); ++i) {
    if (!element_seen.count(inc[i].first)) throw ParseError(inc_line[i], "unknown element " + inc[i].first);
    if (!set_seen.count(inc[i].second)) throw ParseError(inc_line[i], "unknown set " + inc[i].second);
  }
  std::set<std::string> covered;
  for (const auto& [e, s] : inc) covered.insert(e);
  for (const auto& [e, no] : element_seen)
    if (!covered.count(e)) throw ParseError(no, "element " + e + " is not contained in any set");
  return SetCoverInstance::build(std::move(elements), std::move(sets), inc, weighted ? &cost : nullptr);
}

void write_edge_list(std::ostream& out, const WeightedGraph& g) {
  const bool weights = std::any_of(g.weight.begin(), g.weight.end(), [](auto w) { return w != 1; });
  for (Index v = 0; v < g.graph.size(); ++v) {
    if (weights)
      out << "n " << g.graph.id(v) << ' ' << g.weight[v] << '\n';
    else if (g.graph.degree(v) == 0)
      out << "n " << g.graph.id(v) << '\n';
  }
  for (auto [a, b] : g.graph.edges()) out << g.graph.id(a) << ' ' << g.graph.id(b) << '\n';
}

void write_set_cover(std::ostream& out, const SetCoverInstance& inst) {
  for (const auto& e : inst.element_names) out << "e " << e << '\n';
  for (Index v = 0; v < inst.num_sets(); ++v) {
    out << "s " << inst.set_names[v];
    if (inst.weighted) out << ' ' << inst.cost[v];
    out << '\n';
  }
  for (Index v = 0; v < inst.num_sets(); ++v)
    for (Index u : inst.elements_of[v]) out << "c " << inst.element_names[u] << ' ' << inst.set_names[v] << '\n';
}

namespace {

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return in;
}

template <class Fn>
auto with_path(const std::string& path, Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError& e) {
    throw ParseError(path, e);
  }
}

}  // namespace

WeightedGraph load_graph(const std::string& path, const std::string& weights_path) {
  WeightedGraph g = with_path(path, [&] {
    auto in = open(path);
    return parse_edge_list(in);
  });
  if (!weights_path.empty()) {
    with_path(weights_path, [&] {
      auto in = open(weights_path);
      apply_node_weights(g, in);
      return 0;
    });
  }
  return g;
}

SetCoverInstance load_set_cover(const std::string& path) {
  return with_path(path, [&] {
    auto in = open(path);
    return parse_set_cover(in);
  });
}

}  // namespace dlr
