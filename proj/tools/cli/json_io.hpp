#pragma once

#include <json.hpp>

#include "dlr/graph.hpp"
#include "dlr/rational.hpp"
#include "dlr/rounding.hpp"
#include "dlr/sim.hpp"

namespace dlr::cli {

using Json = nlohmann::ordered_json;

// Exact rationals travel as {"num": "<int>", "den": "<int>"}.
Json to_json(const Rational& r);
Rational rational_from(const Json& j);
Json to_json(const UtilityCost& uc);

// {"kind": "graph", "nodes": [{"id", "weight"}], "edges": [[id, id]]}, nodes ascending.
Json graph_json(const WeightedGraph& g);
WeightedGraph graph_from(const Json& j);

// {"kind": "setcover", "weighted", "elements": [name], "sets": [{"name", "cost", "elements": [index]}]}.
Json cover_json(const SetCoverInstance& inst);
SetCoverInstance cover_from(const Json& j);

Json metrics_json(const RunMetrics& m);

}  // namespace dlr::cli
