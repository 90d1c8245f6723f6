#include "dlr/generate.hpp"

#include <random>
#include <set>
#include <string>

#include "dlr/errors.hpp"

namespace dlr {

namespace {

// Uniform in [0, bound) by rejection; the distribution classes of the
// standard library are not portable across implementations.
std::uint64_t below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  for (;;) {
    std::uint64_t r = rng();
    if (r < limit) return r % bound;
  }
}

}  // namespace

WeightedGraph generate_graph(const GraphSpec& spec) {
  const std::uint64_t n = spec.n;
  require(spec.id_stride > 0, "id stride must be positive");
  require(spec.max_weight > 0, "max weight must be positive");
  require(spec.m <= n * (n > 0 ? n - 1 : 0) / 2, "more edges requested than a simple graph on n nodes has");
  require(spec.max_degree == 0 || spec.m <= n * spec.max_degree / 2, "edge target exceeds n * max_degree / 2");
  if (n > 0) require(spec.first_id + (n - 1) * spec.id_stride >= spec.first_id, "node ids overflow");

  std::mt19937_64 rng(spec.seed);
  std::vector<NodeId> ids(n);
  for (std::uint64_t i = 0; i < n; ++i) ids[i] = spec.first_id + i * spec.id_stride;
  const Index cap = spec.max_degree ? spec.max_degree : static_cast<Index>(n);
  std::vector<Index> deg(n, 0);
  std::set<std::pair<Index, Index>> seen;
  std::vector<std::pair<Index, Index>> edges;
  for (std::uint64_t tries = 0; edges.size() < spec.m && tries < 20 * spec.m + 100; ++tries) {
    auto a = static_cast<Index>(below(rng, n)), b = static_cast<Index>(below(rng, n));
    if (a == b || deg[a] >= cap || deg[b] >= cap) continue;
    if (a > b) std::swap(a, b);
    if (!seen.insert({a, b}).second) continue;
    ++deg[a];
    ++deg[b];
    edges.emplace_back(a, b);
  }
  WeightedGraph g;
  g.graph = Graph::from_indices(std::move(ids), edges);
  g.weight.resize(n);
  for (auto& w : g.weight) w = 1 + below(rng, spec.max_weight);
  return g;
}

SetCoverInstance generate_set_cover(const SetCoverSpec& spec) {
  const Index nu = spec.elements, nv = spec.sets;
  require(nu == 0 || nv > 0, "elements need at least one set");
  require(spec.max_cost > 0, "max cost must be positive");
  const Index s = spec.max_set_size ? spec.max_set_size : nu;
  const Index t = spec.max_element_degree ? spec.max_element_degree : nv;
  require(nu == 0 || static_cast<std::uint64_t>(nv) * s >= nu, "sets * max set size is below the element count");

  std::mt19937_64 rng(spec.seed);
  std::vector<Index> size(nv, 0), deg(nu, 0);
  std::set<std::pair<Index, Index>> inc;  // (element, set)
  // One guaranteed set per element, drawn among sets with room.
  std::vector<Index> open;
  for (Index v = 0; v < nv; ++v) open.push_back(v);
  for (Index u = 0; u < nu; ++u) {
    std::uint64_t k = below(rng, open.size());
    Index v = open[k];
    inc.insert({u, v});
    ++deg[u];
    if (++size[v] == s) {
      open[k] = open.back();
      open.pop_back();
    }
  }
  for (Index u = 0; u < nu; ++u) {
    const Index want = 1 + static_cast<Index>(below(rng, t));
    for (int tries = 0; deg[u] < want && tries < 8 * static_cast<int>(want); ++tries) {
      Index v = static_cast<Index>(below(rng, nv));
      if (size[v] >= s || !inc.insert({u, v}).second) continue;
      ++deg[u];
      ++size[v];
    }
  }
  std::vector<std::string> el(nu), st(nv);
  for (Index u = 0; u < nu; ++u) el[u] = std::to_string(u + 1);
  for (Index v = 0; v < nv; ++v) st[v] = std::to_string(v + 1);
  std::vector<std::pair<std::string, std::string>> pairs;
  for (auto [u, v] : inc) pairs.emplace_back(el[u], st[v]);
  std::vector<std::uint64_t> cost(nv);
  for (auto& c : cost) c = 1 + below(rng, spec.max_cost);
  return SetCoverInstance::build(std::move(el), std::move(st), pairs, spec.max_cost > 1 ? &cost : nullptr);
}

}  // namespace dlr
