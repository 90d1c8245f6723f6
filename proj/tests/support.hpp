#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "dlr/graph.hpp"
#include "dlr/rational.hpp"

namespace dlr::testing {

// Random simple graph with n nodes, about m edges and max degree <= cap.
inline std::shared_ptr<const Graph> random_graph(std::mt19937_64& rng, Index n, std::size_t m, Index cap,
                                                 NodeId id_stride = 1) {
  std::vector<NodeId> ids(n);
  for (Index i = 0; i < n; ++i) ids[i] = 1 + i * id_stride;
  std::vector<std::pair<Index, Index>> edges;
  std::set<std::pair<Index, Index>> seen;
  std::vector<Index> deg(n, 0);
  if (n >= 2) {
    std::uniform_int_distribution<Index> pick(0, n - 1);
    for (std::size_t tries = 0; tries < 4 * m && edges.size() < m; ++tries) {
      Index a = pick(rng), b = pick(rng);
      if (a == b) continue;
      if (a > b) std::swap(a, b);
      if (deg[a] >= cap || deg[b] >= cap || !seen.insert({a, b}).second) continue;
      ++deg[a];
      ++deg[b];
      edges.emplace_back(a, b);
    }
  }
  return std::make_shared<const Graph>(Graph::from_indices(std::move(ids), edges));
}

inline Rational random_rational(std::mt19937_64& rng, std::int64_t max_num, std::int64_t max_den) {
  std::uniform_int_distribution<std::int64_t> num(0, max_num), den(1, max_den);
  return Rational(num(rng), den(rng));
}

// Adds random virtual edges managed by comm nodes with >= 2 neighbours.
inline Multigraph random_d2(std::mt19937_64& rng, std::shared_ptr<const Graph> g, double virtual_rate) {
  std::bernoulli_distribution coin(virtual_rate);
  std::vector<std::vector<std::pair<Index, Index>>> pairs(g->size());
  for (Index m = 0; m < g->size(); ++m) {
    auto nb = g->neighbors(m);
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j)
        if (coin(rng)) pairs[m].emplace_back(nb[i], nb[j]);
  }
  std::vector<Index> nodes(g->size());
  for (Index i = 0; i < g->size(); ++i) nodes[i] = i;
  return build_d2_multigraph(g, nodes, g->edges(), [&](Index m) { return pairs[m]; });
}

}  // namespace dlr::testing
