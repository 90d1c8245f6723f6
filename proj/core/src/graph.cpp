#include "dlr/graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

#include "dlr/errors.hpp"

namespace dlr {

Graph Graph::build(std::vector<NodeId> nodes, const std::vector<std::pair<NodeId, NodeId>>& edges) {
  std::sort(nodes.begin(), nodes.end());
  require(std::adjacent_find(nodes.begin(), nodes.end()) == nodes.end(), "duplicate node id");
  std::vector<std::pair<Index, Index>> idx;
  idx.reserve(edges.size());
  auto find = [&](NodeId id) {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), id);
    require(it != nodes.end() && *it == id, "edge references unknown node " + std::to_string(id));
    return static_cast<Index>(it - nodes.begin());
  };
  for (auto [u, v] : edges) idx.emplace_back(find(u), find(v));
  return from_indices(std::move(nodes), idx);
}

Graph Graph::from_indices(std::vector<NodeId> ids, const std::vector<std::pair<Index, Index>>& edges) {
  Graph g;
  g.ids_ = std::move(ids);
  const Index n = g.size();
  std::vector<std::pair<Index, Index>> dir;
  dir.reserve(edges.size() * 2);
  for (auto [u, v] : edges) {
    require(u < n && v < n, "edge index out of range");
    require(u != v, "self-loop at node " + std::to_string(g.ids_[u]));
    dir.emplace_back(u, v);
    dir.emplace_back(v, u);
  }
  std::sort(dir.begin(), dir.end());
  for (std::size_t i = 1; i < dir.size(); ++i)
    require(dir[i] != dir[i - 1],
            "duplicate edge " + std::to_string(g.ids_[dir[i].first]) + " " + std::to_string(g.ids_[dir[i].second]));
  g.off_.assign(n + 1, 0);
  for (auto [u, v] : dir) ++g.off_[u + 1];
  for (Index i = 0; i < n; ++i) g.off_[i + 1] += g.off_[i];
  g.adj_.resize(dir.size());
  for (std::size_t i = 0; i < dir.size(); ++i) g.adj_[i] = dir[i].second;
  g.rev_.resize(dir.size());
  for (Index u = 0; u < n; ++u) {
    for (Slot s = g.off_[u]; s < g.off_[u + 1]; ++s) g.rev_[s] = *g.slot_of(g.adj_[s], u);
    g.max_degree_ = std::max(g.max_degree_, g.degree(u));
  }
  return g;
}

std::optional<Index> Graph::index_of(NodeId id) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) return std::nullopt;
  return static_cast<Index>(it - ids_.begin());
}

std::optional<Slot> Graph::slot_of(Index from, Index to) const {
  auto b = adj_.begin() + off_[from];
  auto e = adj_.begin() + off_[from + 1];
  auto it = std::lower_bound(b, e, to);
  if (it == e || *it != to) return std::nullopt;
  return static_cast<Slot>(it - adj_.begin());
}

std::vector<std::pair<Index, Index>> Graph::edges() const {
  std::vector<std::pair<Index, Index>> out;
  out.reserve(num_edges());
  for (Index u = 0; u < size(); ++u)
    for (Index v : neighbors(u))
      if (u < v) out.emplace_back(u, v);
  return out;
}

Graph Graph::induced(const std::vector<char>& keep) const {
  std::vector<Index> remap(size(), static_cast<Index>(-1));
  std::vector<NodeId> ids;
  for (Index v = 0; v < size(); ++v)
    if (keep[v]) {
      remap[v] = static_cast<Index>(ids.size());
      ids.push_back(ids_[v]);
    }
  std::vector<std::pair<Index, Index>> es;
  for (auto [u, v] : edges())
    if (keep[u] && keep[v]) es.emplace_back(remap[u], remap[v]);
  return from_indices(std::move(ids), es);
}

WeightedGraph WeightedGraph::unit(Graph g) {
  WeightedGraph w;
  w.weight.assign(g.size(), 1);
  w.graph = std::move(g);
  return w;
}

std::uint64_t WeightedGraph::total_weight() const {
  return std::accumulate(weight.begin(), weight.end(), std::uint64_t{0});
}

Multigraph::Multigraph(std::shared_ptr<const Graph> comm, std::vector<Index> nodes, std::vector<HEdge> edges)
    : comm_(std::move(comm)), nodes_(std::move(nodes)), edges_(std::move(edges)) {
  const Graph& g = *comm_;
  const Index n = g.size();
  std::sort(nodes_.begin(), nodes_.end());
  require(std::adjacent_find(nodes_.begin(), nodes_.end()) == nodes_.end(), "duplicate node in multigraph");
  in_h_.assign(n, 0);
  for (Index v : nodes_) {
    require(v < n, "multigraph node outside the communication graph");
    in_h_[v] = 1;
  }
  std::vector<std::tuple<Index, Index, Index, int>> seen;
  seen.reserve(edges_.size());
  for (auto& e : edges_) {
    if (e.a > e.b) std::swap(e.a, e.b);
    require(e.a != e.b, "self-loop in multigraph");
    require(e.b < n && in_h_[e.a] && in_h_[e.b], "multigraph edge endpoint is not a node");
    if (e.kind == EdgeKind::Physical) {
      e.manager = e.a;
      require(g.adjacent(e.a, e.b), "physical edge is not a communication edge");
    } else {
      require(e.manager < n && e.manager != e.a && e.manager != e.b && g.adjacent(e.manager, e.a) &&
                  g.adjacent(e.manager, e.b),
              "virtual edge manager is not adjacent to both endpoints");
    }
    seen.emplace_back(e.a, e.b, e.kind == EdgeKind::Physical ? n : e.manager, 0);
  }
  std::sort(seen.begin(), seen.end());
  require(std::adjacent_find(seen.begin(), seen.end()) == seen.end(), "duplicate multigraph edge");

  inc_off_.assign(n + 1, 0);
  for (const auto& e : edges_) {
    ++inc_off_[e.a + 1];
    ++inc_off_[e.b + 1];
  }
  for (Index i = 0; i < n; ++i) inc_off_[i + 1] += inc_off_[i];
  inc_.resize(edges_.size() * 2);
  {
    std::vector<std::uint32_t> pos(inc_off_.begin(), inc_off_.end() - 1);
    for (Index i = 0; i < edges_.size(); ++i) {
      inc_[pos[edges_[i].a]++] = i;
      inc_[pos[edges_[i].b]++] = i;
    }
  }
  for (Index v : nodes_) max_degree_ = std::max(max_degree_, degree(v));

  // Handler layout.
  struct Entry {
    Index handler, endpoint, edge;
  };
  std::vector<Entry> entries;
  entries.reserve(edges_.size() * 2);
  for (Index i = 0; i < edges_.size(); ++i) {
    const auto& e = edges_[i];
    if (e.kind == EdgeKind::Physical) {
      entries.push_back({e.a, e.a, i});
      entries.push_back({e.b, e.b, i});
    } else {
      entries.push_back({e.manager, e.a, i});
      entries.push_back({e.manager, e.b, i});
    }
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) {
    return std::tie(x.handler, x.endpoint, x.edge) < std::tie(y.handler, y.endpoint, y.edge);
  });
  layout_.handled.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& en = entries[i];
    const auto& e = edges_[en.edge];
    HandledEdge h;
    h.edge = en.edge;
    h.endpoint_is_a = (en.endpoint == e.a);
    Index other = h.endpoint_is_a ? e.b : e.a;
    h.self_slot = en.handler == en.endpoint ? kOwnSlot : *g.slot_of(en.handler, en.endpoint);
    h.other_slot = *g.slot_of(en.handler, other);
    if (i == 0 || en.handler != entries[i - 1].handler || en.endpoint != entries[i - 1].endpoint)
      layout_.groups.push_back({en.handler, en.endpoint, static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i)});
    layout_.handled.push_back(h);
    layout_.groups.back().end = static_cast<std::uint32_t>(i + 1);
  }
  layout_.endpoint_off.assign(n + 1, 0);
  for (const auto& gr : layout_.groups) ++layout_.endpoint_off[gr.endpoint + 1];
  for (Index i = 0; i < n; ++i) layout_.endpoint_off[i + 1] += layout_.endpoint_off[i];
  layout_.endpoint_groups.resize(layout_.groups.size());
  {
    std::vector<std::uint32_t> pos(layout_.endpoint_off.begin(), layout_.endpoint_off.end() - 1);
    // groups are sorted by handler, so each endpoint's list comes out ascending in handler
    for (std::uint32_t gi = 0; gi < layout_.groups.size(); ++gi)
      layout_.endpoint_groups[pos[layout_.groups[gi].endpoint]++] = gi;
  }
}

Multigraph Multigraph::from_graph(std::shared_ptr<const Graph> g) {
  std::vector<Index> nodes(g->size());
  std::iota(nodes.begin(), nodes.end(), 0);
  std::vector<HEdge> es;
  for (auto [u, v] : g->edges()) es.push_back({u, v, EdgeKind::Physical, u});
  return Multigraph(g, std::move(nodes), std::move(es));
}

Multigraph build_d2_multigraph(std::shared_ptr<const Graph> comm, std::vector<Index> nodes,
                               std::vector<std::pair<Index, Index>> physical,
                               const std::function<std::vector<std::pair<Index, Index>>(Index)>& virtual_pairs) {
  for (auto& p : physical)
    if (p.first > p.second) std::swap(p.first, p.second);
  std::sort(physical.begin(), physical.end());
  physical.erase(std::unique(physical.begin(), physical.end()), physical.end());
  std::vector<HEdge> es;
  es.reserve(physical.size());
  for (auto [a, b] : physical) es.push_back({a, b, EdgeKind::Physical, a});
  if (virtual_pairs) {
    for (Index m = 0; m < comm->size(); ++m) {
      auto pairs = virtual_pairs(m);
      for (auto& p : pairs)
        if (p.first > p.second) std::swap(p.first, p.second);
      std::sort(pairs.begin(), pairs.end());
      pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
      for (auto [a, b] : pairs) es.push_back({a, b, EdgeKind::Virtual, m});
    }
  }
  return Multigraph(std::move(comm), std::move(nodes), std::move(es));
}

Orientation orient_by_degree_id(const Graph& g) {
  Orientation o;
  o.in.resize(g.size());
  o.out.resize(g.size());
  auto key = [&](Index v) { return std::make_pair(g.degree(v), g.id(v)); };
  for (Index v = 0; v < g.size(); ++v)
    for (Index u : g.neighbors(v)) {
      if (key(v) < key(u))
        o.out[v].push_back(u);
      else
        o.in[v].push_back(u);
    }
  return o;
}

LineGraphView line_graph_view(const Graph& g, const std::vector<std::pair<Index, Index>>& edges,
                              const std::vector<NodeId>& ids) {
  require(edges.size() == ids.size(), "one id per edge-node is required");
  const Index n = g.size();
  const Index m = static_cast<Index>(edges.size());
  NodeId max_id = n ? g.ids().back() : 0;
  std::vector<Index> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](Index x, Index y) { return ids[x] < ids[y]; });
  auto info = std::make_shared<LineGraphInfo>();
  info->base_nodes = n;
  std::vector<NodeId> all_ids(g.ids());
  std::vector<std::pair<Index, Index>> comm_edges;
  comm_edges.reserve(2 * m);
  for (Index r = 0; r < m; ++r) {
    Index e = order[r];
    require(n == 0 || ids[e] > max_id, "edge-node id collides with a node id");
    require(r == 0 || ids[e] != ids[order[r - 1]], "duplicate edge-node id");
    auto [a, b] = edges[e];
    require(g.adjacent(a, b), "line graph edge is not an edge of the graph");
    all_ids.push_back(ids[e]);
    info->endpoints.emplace_back(std::min(a, b), std::max(a, b));
    comm_edges.emplace_back(a, n + r);
    comm_edges.emplace_back(b, n + r);
  }
  auto comm = std::make_shared<const Graph>(Graph::from_indices(std::move(all_ids), comm_edges));
  std::vector<Index> nodes(m);
  std::iota(nodes.begin(), nodes.end(), n);
  std::vector<HEdge> hedges;
  info->line_degree.assign(m, 0);
  for (Index w = 0; w < n; ++w) {
    std::vector<Index> here;
    for (Index x : comm->neighbors(w))
      if (x >= n) here.push_back(x);
    for (std::size_t i = 0; i < here.size(); ++i)
      for (std::size_t j = i + 1; j < here.size(); ++j) {
        hedges.push_back({here[i], here[j], EdgeKind::Virtual, w});
        ++info->line_degree[here[i] - n];
        ++info->line_degree[here[j] - n];
      }
  }
  LineGraphView view;
  view.h = Multigraph(comm, std::move(nodes), std::move(hedges));
  view.comm = std::move(comm);
  view.info = std::move(info);
  return view;
}

LineGraphView line_graph_view(const Graph& g) {
  auto es = g.edges();
  NodeId base = g.size() ? g.ids().back() + 1 : 0;
  require(g.size() == 0 || base != 0, "node ids leave no room for edge-node ids");
  std::vector<NodeId> ids(es.size());
  for (std::size_t i = 0; i < es.size(); ++i) {
    require(base + i >= base, "edge-node id overflow");
    ids[i] = base + i;
  }
  return line_graph_view(g, es, ids);
}

bool name_less(const std::string& a, const std::string& b) {
  auto numeric = [](const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  bool na = numeric(a), nb = numeric(b);
  if (na != nb) return na;
  if (na) {
    auto strip = [](const std::string& s) {
      std::size_t i = s.find_first_not_of('0');
      return i == std::string::npos ? std::string("0") : s.substr(i);
    };
    std::string x = strip(a), y = strip(b);
    if (x.size() != y.size()) return x.size() < y.size();
    if (x != y) return x < y;
  }
  return a < b;
}

Index SetCoverInstance::max_set_size() const {
  Index s = 0;
  for (const auto& e : elements_of) s = std::max<Index>(s, static_cast<Index>(e.size()));
  return s;
}

Index SetCoverInstance::max_element_degree() const {
  Index t = 0;
  for (const auto& s : sets_of) t = std::max<Index>(t, static_cast<Index>(s.size()));
  return t;
}

std::uint64_t SetCoverInstance::max_cost() const {
  std::uint64_t w = 0;
  for (auto c : cost) w = std::max(w, c);
  return w;
}

std::shared_ptr<const Graph> SetCoverInstance::comm_graph() const {
  const Index nv = num_sets();
  std::vector<NodeId> ids(nv + num_elements());
  std::iota(ids.begin(), ids.end(), NodeId{0});
  std::vector<std::pair<Index, Index>> es;
  for (Index u = 0; u < num_elements(); ++u)
    for (Index v : sets_of[u]) es.emplace_back(v, nv + u);
  return std::make_shared<const Graph>(Graph::from_indices(std::move(ids), es));
}

SetCoverInstance SetCoverInstance::build(std::vector<std::string> elements, std::vector<std::string> sets,
                                         const std::vector<std::pair<std::string, std::string>>& incidences,
                                         const std::vector<std::uint64_t>* costs) {
  SetCoverInstance inst;
  std::vector<std::uint64_t> cost_in;
  if (costs) {
    require(costs->size() == sets.size(), "one cost per set is required");
    cost_in = *costs;
  } else {
    cost_in.assign(sets.size(), 1);
  }
  std::vector<std::size_t> sorder(sets.size());
  std::iota(sorder.begin(), sorder.end(), 0);
  std::sort(sorder.begin(), sorder.end(), [&](std::size_t x, std::size_t y) { return name_less(sets[x], sets[y]); });
  for (std::size_t i : sorder) {
    inst.set_names.push_back(sets[i]);
    require(cost_in[i] > 0, "set cost must be positive");
    inst.cost.push_back(cost_in[i]);
  }
  std::sort(elements.begin(), elements.end(), name_less);
  inst.element_names = std::move(elements);
  for (std::size_t i = 1; i < inst.element_names.size(); ++i)
    require(inst.element_names[i] != inst.element_names[i - 1], "duplicate element " + inst.element_names[i]);
  for (std::size_t i = 1; i < inst.set_names.size(); ++i)
    require(inst.set_names[i] != inst.set_names[i - 1], "duplicate set " + inst.set_names[i]);
  auto find = [](const std::vector<std::string>& names, const std::string& x) -> std::optional<Index> {
    auto it = std::lower_bound(names.begin(), names.end(), x, name_less);
    if (it == names.end() || *it != x) return std::nullopt;
    return static_cast<Index>(it - names.begin());
  };
  inst.sets_of.resize(inst.element_names.size());
  inst.elements_of.resize(inst.set_names.size());
  for (const auto& [e, s] : incidences) {
    auto ei = find(inst.element_names, e);
    auto si = find(inst.set_names, s);
    require(ei.has_value(), "incidence references unknown element " + e);
    require(si.has_value(), "incidence references unknown set " + s);
    inst.sets_of[*ei].push_back(*si);
    inst.elements_of[*si].push_back(*ei);
  }
  for (Index u = 0; u < inst.num_elements(); ++u) {
    auto& l = inst.sets_of[u];
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
    require(!l.empty(), "element " + inst.element_names[u] + " is not covered by any set");
  }
  for (auto& l : inst.elements_of) {
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
  }
  inst.weighted = costs != nullptr;
  return inst;
}

SetCoverInstance SetCoverInstance::from_dominating_set(const Graph& g) {
  std::vector<std::string> names;
  for (NodeId id : g.ids()) names.push_back(std::to_string(id));
  std::vector<std::pair<std::string, std::string>> inc;
  for (Index v = 0; v < g.size(); ++v) {
    inc.emplace_back(names[v], names[v]);
    for (Index u : g.neighbors(v)) inc.emplace_back(names[u], names[v]);
  }
  return build(names, names, inc, nullptr);
}

}  // namespace dlr
