#pragma once

#include <cstdint>

#include "dlr/graph.hpp"

namespace dlr {

// Seeded instance generators. Output depends only on the spec, so a fixed
// seed reproduces the same instance on every platform.

struct GraphSpec {
  Index n = 0;
  std::uint64_t m = 0;              // edge target; fewer when the caps bind
  Index max_degree = 0;             // 0: no cap
  std::uint64_t max_weight = 1;     // weights uniform in [1, max_weight]
  NodeId first_id = 1;
  NodeId id_stride = 1;
  std::uint64_t seed = 1;
};

// Random edges subject to the degree cap. Throws PreconditionError when
// m > n (n - 1) / 2 or m > n * max_degree / 2.
WeightedGraph generate_graph(const GraphSpec& spec);

struct SetCoverSpec {
  Index elements = 0;
  Index sets = 0;
  Index max_set_size = 0;        // s cap, 0: none
  Index max_element_degree = 0;  // t cap, 0: none
  std::uint64_t max_cost = 1;    // > 1 produces a weighted instance
  std::uint64_t seed = 1;
};

// Every element lands in at least one set, then each element draws a degree
// in [1, t] and joins random sets with room. Throws PreconditionError when
// the caps cannot cover every element (sets * s < elements) or when there are
// elements but no sets.
SetCoverInstance generate_set_cover(const SetCoverSpec& spec);

}  // namespace dlr
