#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace dlr {

using NodeId = std::uint64_t;
using Index = std::uint32_t;
using Slot = std::uint32_t;

inline constexpr Slot kOwnSlot = static_cast<Slot>(-1);

// Simple undirected graph. Nodes are addressed by dense indices assigned in
// ascending NodeId order; adjacency lists are sorted, so index order and
// NodeId order agree everywhere.
class Graph {
 public:
  Graph() = default;

  // Throws PreconditionError on duplicate nodes, self-loops, duplicate edges,
  // or edges touching unknown nodes.
  static Graph build(std::vector<NodeId> nodes, const std::vector<std::pair<NodeId, NodeId>>& edges);
  // ids must be strictly increasing; edges are index pairs.
  static Graph from_indices(std::vector<NodeId> ids, const std::vector<std::pair<Index, Index>>& edges);

  Index size() const { return static_cast<Index>(ids_.size()); }
  std::size_t num_edges() const { return adj_.size() / 2; }
  NodeId id(Index v) const { return ids_[v]; }
  const std::vector<NodeId>& ids() const { return ids_; }
  std::optional<Index> index_of(NodeId id) const;

  std::span<const Index> neighbors(Index v) const {
    return {adj_.data() + off_[v], adj_.data() + off_[v + 1]};
  }
  Index degree(Index v) const { return off_[v + 1] - off_[v]; }
  Index max_degree() const { return max_degree_; }
  bool adjacent(Index u, Index v) const { return slot_of(u, v).has_value(); }

  // Slots enumerate directed adjacencies: slot s in [slot_begin(v), slot_begin(v+1))
  // points from v to slot_target(s).
  Slot slot_begin(Index v) const { return off_[v]; }
  Slot num_slots() const { return static_cast<Slot>(adj_.size()); }
  Index slot_target(Slot s) const { return adj_[s]; }
  Slot reverse_slot(Slot s) const { return rev_[s]; }
  std::optional<Slot> slot_of(Index from, Index to) const;

  // Undirected edges as (u, v) with u < v, lexicographically sorted.
  std::vector<std::pair<Index, Index>> edges() const;
  // Subgraph on the kept nodes; NodeIds are preserved.
  Graph induced(const std::vector<char>& keep) const;

 private:
  std::vector<NodeId> ids_;
  std::vector<Slot> off_{0};
  std::vector<Index> adj_;
  std::vector<Slot> rev_;
  Index max_degree_ = 0;
};

struct LineGraphInfo;

struct WeightedGraph {
  Graph graph;
  std::vector<std::uint64_t> weight;  // positive, by index
  std::shared_ptr<const LineGraphInfo> line;  // set when this is a line graph of another graph

  static WeightedGraph unit(Graph g);
  std::uint64_t total_weight() const;
};

enum class EdgeKind : std::uint8_t { Physical, Virtual };

struct HEdge {
  Index a = 0;  // comm indices, a < b
  Index b = 0;
  EdgeKind kind = EdgeKind::Physical;
  Index manager = 0;  // equals a for physical edges
};

struct HandledEdge {
  Index edge = 0;
  Slot self_slot = kOwnSlot;  // where the handler finds the endpoint's state
  Slot other_slot = 0;        // where the handler finds the other endpoint's state
  bool endpoint_is_a = false;
};

// All edges a handler evaluates on behalf of one endpoint.
struct HandlerGroup {
  Index handler = 0;
  Index endpoint = 0;
  std::uint32_t begin = 0;
  std::uint32_t end = 0;
};

struct HandlerLayout {
  std::vector<HandledEdge> handled;
  std::vector<HandlerGroup> groups;  // sorted by (handler, endpoint)
  std::vector<std::uint32_t> endpoint_off;
  std::vector<std::uint32_t> endpoint_groups;  // group indices per endpoint, ascending handler

  std::span<const std::uint32_t> groups_of(Index endpoint) const {
    return {endpoint_groups.data() + endpoint_off[endpoint], endpoint_groups.data() + endpoint_off[endpoint + 1]};
  }
};

// Multigraph H simulated over a communication graph G. Physical edges are
// edges of G handled by their endpoints; a virtual edge {a, b} is handled by
// a manager adjacent to both in G.
class Multigraph {
 public:
  Multigraph() = default;
  // Throws PreconditionError when an edge is not realisable in G, a node is
  // repeated, or an edge (or a (manager, pair) virtual edge) is duplicated.
  Multigraph(std::shared_ptr<const Graph> comm, std::vector<Index> nodes, std::vector<HEdge> edges);
  static Multigraph from_graph(std::shared_ptr<const Graph> g);

  const Graph& comm() const { return *comm_; }
  const std::shared_ptr<const Graph>& comm_ptr() const { return comm_; }
  const std::vector<Index>& nodes() const { return nodes_; }
  bool contains(Index v) const { return in_h_[v] != 0; }
  const std::vector<HEdge>& edges() const { return edges_; }
  std::size_t num_edges() const { return edges_.size(); }
  std::span<const Index> incident(Index v) const {
    return {inc_.data() + inc_off_[v], inc_.data() + inc_off_[v + 1]};
  }
  Index degree(Index v) const { return inc_off_[v + 1] - inc_off_[v]; }
  Index max_degree() const { return max_degree_; }
  Index other(Index e, Index v) const { return edges_[e].a == v ? edges_[e].b : edges_[e].a; }
  const HandlerLayout& layout() const { return layout_; }

 private:
  std::shared_ptr<const Graph> comm_;
  std::vector<Index> nodes_;
  std::vector<char> in_h_;
  std::vector<HEdge> edges_;
  std::vector<std::uint32_t> inc_off_;
  std::vector<Index> inc_;
  Index max_degree_ = 0;
  HandlerLayout layout_;
};

// Builds H from physical pairs plus, for every comm node m, the virtual pairs
// m manages. Repeated physical pairs and repeated (manager, pair) entries are
// collapsed to one edge; the edge order is physical pairs first, then virtual
// edges grouped by manager, both sorted.
Multigraph build_d2_multigraph(std::shared_ptr<const Graph> comm, std::vector<Index> nodes,
                               std::vector<std::pair<Index, Index>> physical,
                               const std::function<std::vector<std::pair<Index, Index>>(Index)>& virtual_pairs);

// Orientation from smaller to larger (degree, NodeId).
struct Orientation {
  std::vector<std::vector<Index>> in;
  std::vector<std::vector<Index>> out;
};
Orientation orient_by_degree_id(const Graph& g);

struct LineGraphInfo {
  Index base_nodes = 0;                           // comm indices below this are nodes of the base graph
  std::vector<std::pair<Index, Index>> endpoints;  // per edge-node, base indices
  std::vector<Index> line_degree;                 // degree of each edge-node in the line graph
};

// Line graph of g restricted to `edges`, realised over the graph obtained by
// subdividing every edge: edge-node r gets NodeId ids[r] and is adjacent to
// both endpoints; two edge-nodes sharing endpoint w form a virtual edge
// managed by w. All ids must exceed every NodeId of g.
struct LineGraphView {
  std::shared_ptr<const Graph> comm;
  Multigraph h;
  std::shared_ptr<const LineGraphInfo> info;
};
LineGraphView line_graph_view(const Graph& g, const std::vector<std::pair<Index, Index>>& edges,
                              const std::vector<NodeId>& ids);
LineGraphView line_graph_view(const Graph& g);

// Bipartite set-cover instance. Sets are numbered 0..|V|-1 and elements
// 0..|U|-1, each in ascending name order (numeric names first, numerically).
struct SetCoverInstance {
  std::vector<std::string> element_names;
  std::vector<std::string> set_names;
  std::vector<std::vector<Index>> sets_of;      // per element, ascending
  std::vector<std::vector<Index>> elements_of;  // per set, ascending
  std::vector<std::uint64_t> cost;              // per set; all ones when unweighted
  bool weighted = false;

  Index num_elements() const { return static_cast<Index>(element_names.size()); }
  Index num_sets() const { return static_cast<Index>(set_names.size()); }
  Index max_set_size() const;       // s
  Index max_element_degree() const;  // t
  std::uint64_t max_cost() const;   // W

  // Comm graph: set j is node j, element i is node num_sets() + i.
  std::shared_ptr<const Graph> comm_graph() const;

  // Throws PreconditionError if an element has no set or a cost is zero.
  static SetCoverInstance build(std::vector<std::string> elements, std::vector<std::string> sets,
                                const std::vector<std::pair<std::string, std::string>>& incidences,
                                const std::vector<std::uint64_t>* costs_by_set_input_order);
  // Every node is an element and a set covering its closed neighbourhood.
  static SetCoverInstance from_dominating_set(const Graph& g);
};

// Orders names numerically when both are decimal integers, numbers before
// other strings, otherwise lexicographically.
bool name_less(const std::string& a, const std::string& b);

}  // namespace dlr
