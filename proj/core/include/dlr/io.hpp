#pragma once

#include <iosfwd>
#include <string>

#include "dlr/graph.hpp"

namespace dlr {

// Edge list: lines "u v [w]" (the third token is accepted and ignored),
// "n <id> [weight]" for nodes with a weight or without edges, '#' comments.
// Nodes without an explicit weight get weight 1. Throws ParseError.
WeightedGraph parse_edge_list(std::istream& in);
// Sidecar lines "n <id> <weight>" override weights of existing nodes.
void apply_node_weights(WeightedGraph& g, std::istream& in);
// Lines "e <id>", "s <id> [cost]", "c <element> <set>". The instance is
// weighted when any set line carries a cost; missing costs default to 1.
SetCoverInstance parse_set_cover(std::istream& in);

// Writers emit the formats above; weights are written only when some weight
// differs from 1, costs only for weighted instances.
void write_edge_list(std::ostream& out, const WeightedGraph& g);
void write_set_cover(std::ostream& out, const SetCoverInstance& inst);

// File wrappers; ParseError messages are prefixed by the path.
WeightedGraph load_graph(const std::string& path, const std::string& weights_path = {});
SetCoverInstance load_set_cover(const std::string& path);

}  // namespace dlr
