#include <algorithm>
#include <map>
#include <set>

#include "cli/cli.hpp"
#include "dlr/errors.hpp"
#include "dlr/mis.hpp"
#include "dlr/matching.hpp"
#include "dlr/oracle.hpp"

namespace dlr::cli {
namespace {

// Everything here is recomputed from the embedded instance; runner-side
// assertions are never consulted.

std::string list(const std::vector<std::string>& items, std::size_t cap = 8) {
  std::string out;
  for (std::size_t i = 0; i < items.size() && i < cap; ++i) out += (i ? ", " : "") + items[i];
  if (items.size() > cap) out += ", ... (" + std::to_string(items.size()) + " total)";
  return out;
}

struct Checks {
  std::vector<Check> items;
  void add(std::string name, bool ok, std::string detail = {}) { items.push_back({std::move(name), ok, std::move(detail)}); }
};

std::vector<Index> node_set(const Graph& g, const Json& ids, Checks& c, const char* what) {
  std::vector<Index> out;
  std::vector<std::string> unknown;
  for (const auto& j : ids) {
    auto v = g.index_of(j.get<NodeId>());
    if (v)
      out.push_back(*v);
    else
      unknown.push_back(std::to_string(j.get<NodeId>()));
  }
  std::sort(out.begin(), out.end());
  bool dup = std::adjacent_find(out.begin(), out.end()) != out.end();
  c.add(std::string(what) + "_nodes_known", unknown.empty() && !dup,
        dup ? "repeated node" : (unknown.empty() ? "" : "unknown ids " + list(unknown)));
  return out;
}

void check_independent(const Graph& g, const std::vector<Index>& set, Checks& c) {
  std::vector<char> in(g.size(), 0);
  for (Index v : set) in[v] = 1;
  std::vector<std::string> bad;
  for (auto [a, b] : g.edges())
    if (in[a] && in[b]) bad.push_back("{" + std::to_string(g.id(a)) + "," + std::to_string(g.id(b)) + "}");
  c.add("independent", bad.empty(), bad.empty() ? "" : "edges inside the set: " + list(bad));
}

void check_maximal(const Graph& g, const std::vector<Index>& set, Checks& c) {
  std::vector<char> dominated(g.size(), 0);
  for (Index v : set) {
    dominated[v] = 1;
    for (Index u : g.neighbors(v)) dominated[u] = 1;
  }
  std::vector<std::string> free;
  for (Index v = 0; v < g.size(); ++v)
    if (!dominated[v]) free.push_back(std::to_string(g.id(v)));
  c.add("maximal", free.empty(), free.empty() ? "" : "nodes that could join: " + list(free));
}

std::uint64_t weight_of(const WeightedGraph& g, const std::vector<Index>& set) {
  std::uint64_t w = 0;
  for (Index v : set) w += g.weight[v];
  return w;
}

Rational exact_packing(const WeightedGraph& g) {
  std::vector<Rational> w(g.weight.begin(), g.weight.end());
  return packing_optimum(g.graph, w).value;
}

void verify_mis(const Json& doc, Checks& c) {
  WeightedGraph g = graph_from(doc.at("instance"));
  const auto& res = doc.at("result");
  auto set = node_set(g.graph, res.at("independent_set"), c, "set");
  check_independent(g.graph, set, c);
  check_maximal(g.graph, set, c);
  c.add("size", res.at("size").get<std::size_t>() == set.size());
  const auto& iters = res.at("iterations");
  std::uint64_t bound = mis_iteration_bound(g.graph.num_edges());
  c.add("iteration_bound", iters.size() <= bound,
        std::to_string(iters.size()) + " iterations, bound " + std::to_string(bound));
  std::uint64_t expect = g.graph.num_edges();
  bool chain = true, progress = true;
  for (const auto& it : iters) {
    std::uint64_t e = it.at("edges").get<std::uint64_t>(), r = it.at("removed_edges").get<std::uint64_t>();
    chain = chain && e == expect && r <= e;
    progress = progress && 960 * r >= e;
    expect = e - std::min(r, e);
  }
  c.add("edges_accounted", chain && expect == 0, "residual edges must shrink to zero by the reported removals");
  if (doc.at("params").value("algorithm", "") == "derandomized")
    c.add("iteration_progress", progress, "every iteration removes at least |E|/960 edges");
}

void verify_matching(const Json& doc, Checks& c) {
  WeightedGraph g = graph_from(doc.at("instance"));
  const auto& res = doc.at("result");
  std::vector<std::pair<Index, Index>> m;
  bool known = true;
  for (const auto& e : res.at("matching")) {
    auto a = g.graph.index_of(e.at(0).get<NodeId>()), b = g.graph.index_of(e.at(1).get<NodeId>());
    if (!a || !b) {
      known = false;
      continue;
    }
    m.emplace_back(std::min(*a, *b), std::max(*a, *b));
  }
  c.add("edges_known", known);
  std::vector<int> cover(g.graph.size(), 0);
  std::vector<std::string> bad;
  for (auto [a, b] : m) {
    if (!g.graph.adjacent(a, b)) bad.push_back("not an edge {" + std::to_string(g.graph.id(a)) + "," + std::to_string(g.graph.id(b)) + "}");
    if (++cover[a] > 1) bad.push_back("node " + std::to_string(g.graph.id(a)) + " matched twice");
    if (++cover[b] > 1) bad.push_back("node " + std::to_string(g.graph.id(b)) + " matched twice");
  }
  c.add("matching", bad.empty(), list(bad));
  std::vector<std::string> free;
  for (auto [a, b] : g.graph.edges())
    if (!cover[a] && !cover[b]) free.push_back("{" + std::to_string(g.graph.id(a)) + "," + std::to_string(g.graph.id(b)) + "}");
  c.add("maximal", free.empty(), free.empty() ? "" : "unmatched edges with free endpoints: " + list(free));
  Rational eps = rational_from(doc.at("params").at("eps"));
  std::uint64_t bound = matching_iteration_bound(g.graph.num_edges(), eps);
  std::size_t iters = res.at("iterations").size();
  c.add("iteration_bound", iters <= bound, std::to_string(iters) + " iterations, bound " + std::to_string(bound));
}

void verify_wis(const Json& doc, Checks& c) {
  WeightedGraph g = graph_from(doc.at("instance"));
  const auto& res = doc.at("result");
  const auto& params = doc.at("params");
  auto set = node_set(g.graph, res.at("independent_set"), c, "set");
  check_independent(g.graph, set, c);
  std::uint64_t w = weight_of(g, set);
  c.add("weight", w == res.at("weight").get<std::uint64_t>(), "recomputed " + std::to_string(w));
  Rational eps = rational_from(params.at("eps"));
  std::string algo = params.at("algo").get<std::string>();
  std::optional<Rational> bound;
  std::string how;
  const std::size_t lp_limit = 400;
  if (algo == "basic") {
    Rational x = rational_from(params.at("x")), u;
    for (auto wv : g.weight) u += Rational(wv) * x;
    bound = (Rational(1, 2) - eps) * u;
    how = "(1/2 - eps) u(x)";
  } else if (algo == "turan") {
    bound = (Rational(1) - eps) * Rational(g.total_weight()) / Rational(std::uint64_t{g.graph.max_degree()} + 1);
    how = "(1 - eps) w(V)/(Delta + 1)";
  } else if (algo == "carowei") {
    Rational s;
    for (Index v = 0; v < g.graph.size(); ++v) {
      std::uint64_t closed = g.weight[v];
      for (Index u : g.graph.neighbors(v)) closed += g.weight[u];
      s += Rational(g.weight[v]) * Rational(g.weight[v]) / Rational(closed);
    }
    bound = (Rational(1, 2) - eps) * s;
    how = "(1/2 - eps) sum w(v)^2 / w(N+(v))";
  } else if (g.graph.size() <= lp_limit) {
    Rational s = exact_packing(g);
    bound = algo == "lp4" ? s / Rational(4) : (Rational(1) - eps) * s;
    how = algo == "lp4" ? "S*(w)/4" : "(1 - eps) S*(w)";
  }
  if (bound) {
    c.add("bound", Rational(w) >= *bound, std::to_string(w) + " >= " + bound->str() + " = " + how);
  } else {
    c.add("bound", true, "skipped: exact LP limited to " + std::to_string(lp_limit) + " nodes");
  }
  c.add("reported_bound", Rational(w) >= rational_from(res.at("bound")));
  const auto& trace = res.at("trace");
  if (!trace.at("steps").empty()) {
    Rational rho = rational_from(trace.at("rho")), u0 = rational_from(trace.at("upsilon0")), gained;
    bool decay = true;
    Rational factor(1);
    for (const auto& s : trace.at("steps")) {
      gained += rational_from(s.at("gained"));
      factor *= Rational(1) - rho;
      decay = decay && rational_from(s.at("upsilon")) <= factor * u0;
    }
    c.add("local_ratio_gain", Rational(w) >= gained, "w(I) >= sum of w_i(I_i) = " + gained.str());
    c.add("upsilon_decay", decay, "Upsilon_t <= (1 - rho)^t Upsilon_0");
  }
}

void verify_setcover(const Json& doc, Checks& c) {
  SetCoverInstance inst = cover_from(doc.at("instance"));
  const auto& res = doc.at("result");
  std::map<std::string, Index> by_name;
  for (Index s = 0; s < inst.num_sets(); ++s) by_name[inst.set_names[s]] = s;
  std::vector<Index> chosen;
  std::vector<std::string> unknown;
  for (const auto& n : res.at("cover")) {
    auto it = by_name.find(n.get<std::string>());
    if (it == by_name.end())
      unknown.push_back(n.get<std::string>());
    else
      chosen.push_back(it->second);
  }
  std::sort(chosen.begin(), chosen.end());
  chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());
  c.add("sets_known", unknown.empty(), list(unknown));
  std::vector<char> covered(inst.num_elements(), 0);
  for (Index s : chosen)
    for (Index e : inst.elements_of[s]) covered[e] = 1;
  std::vector<std::string> missing;
  for (Index e = 0; e < inst.num_elements(); ++e)
    if (!covered[e]) missing.push_back(inst.element_names[e]);
  c.add("covers", missing.empty(), missing.empty() ? "" : "uncovered elements: " + list(missing));
  std::uint64_t cost = 0;
  for (Index s : chosen) cost += inst.cost[s];
  c.add("cost", cost == res.at("cost").get<std::uint64_t>(), "recomputed " + std::to_string(cost));

  // OPT_bound = max(sum y, |U|/s) with y a feasible dual packing.
  const auto& frac = res.at("fractional");
  std::vector<Rational> y, x;
  for (const auto& v : frac.at("y")) y.push_back(rational_from(v));
  for (const auto& v : frac.at("x")) x.push_back(rational_from(v));
  bool dual_ok = y.size() == inst.num_elements(), primal_ok = x.size() == inst.num_sets();
  Rational ysum;
  for (const auto& v : y) {
    dual_ok = dual_ok && v.sign() >= 0;
    ysum += v;
  }
  for (Index s = 0; dual_ok && s < inst.num_sets(); ++s) {
    Rational load;
    for (Index e : inst.elements_of[s]) load += y[e];
    dual_ok = load <= Rational(inst.cost[s]);
  }
  for (Index e = 0; primal_ok && e < inst.num_elements(); ++e) {
    Rational sum;
    for (Index s : inst.sets_of[e]) sum += x[s];
    primal_ok = sum >= Rational(1);
  }
  c.add("dual_feasible", dual_ok, "sum y = " + ysum.str());
  c.add("fractional_cover", primal_ok);
  Rational s_size(std::uint64_t{std::max<Index>(inst.max_set_size(), 1)});
  Rational opt_bound = max(ysum, Rational(std::uint64_t{inst.num_elements()}) / s_size);
  Rational reported_opt = rational_from(res.at("opt_bound"));
  c.add("opt_bound", reported_opt == opt_bound, "recomputed " + opt_bound.str());

  std::uint64_t tau = res.at("tau").get<std::uint64_t>();
  std::uint64_t target = std::uint64_t{inst.max_set_size()} * (inst.weighted ? inst.max_cost() : 1);
  std::uint64_t t = 1;
  while (pow(Rational(101, 100), t) < Rational(target)) ++t;
  c.add("tau", tau == t, "recomputed " + std::to_string(t));

  Rational unit = inst.weighted ? Rational(inst.max_cost()) : Rational(1);
  Rational bound = unit * Rational(std::uint64_t{inst.num_elements()}) / pow(Rational(101, 100), tau - 1) +
                   Rational(3 * tau) * opt_bound;
  c.add("cost_bound", Rational(cost) <= bound, std::to_string(cost) + " <= " + bound.str());

  std::vector<Rational> phi;
  for (const auto& v : res.at("phi")) phi.push_back(rational_from(v));
  bool mono = true;
  std::string where;
  for (std::size_t i = 1; i < phi.size(); ++i)
    if (phi[i] > phi[i - 1]) {
      mono = false;
      where = "Phi_" + std::to_string(i + 1) + " > Phi_" + std::to_string(i);
      break;
    }
  c.add("phi_monotone", mono, where);
  c.add("phi_length", phi.size() == tau + 1, std::to_string(phi.size()) + " values for tau " + std::to_string(tau));

  // Phi_i = scale_i |U_i| + spent + 3 (tau - i) OPT_bound, recomputed from the iteration log.
  auto scale = [&](std::uint64_t i) {
    return i <= tau ? unit / pow(Rational(101, 100), tau - i) : unit * pow(Rational(101, 100), i - tau);
  };
  std::uint64_t uncovered = inst.num_elements();
  Rational spent;
  bool trace = phi.size() == tau + 1;
  const auto& iters = res.at("iterations");
  for (std::uint64_t i = 1; trace && i <= tau + 1; ++i) {
    Rational want = scale(i) * Rational(uncovered) + spent + (Rational(tau) - Rational(i)) * Rational(3) * opt_bound;
    trace = phi[i - 1] == want;
    if (i <= iters.size()) {
      const auto& it = iters[i - 1];
      trace = trace && it.at("uncovered").get<std::uint64_t>() == uncovered;
      uncovered -= std::min(uncovered, it.at("newly_covered").get<std::uint64_t>());
      spent += Rational(it.at("selected_cost").get<std::uint64_t>());
    }
  }
  c.add("phi_trace", trace, "Phi recomputed from per-iteration counts");
}

void verify_color(const Json& doc, Checks& c) {
  WeightedGraph g = graph_from(doc.at("instance"));
  const auto& res = doc.at("result");
  const auto& params = doc.at("params");
  bool d2 = params.at("d2").get<bool>();
  bool min_w = params.at("edge_weight").get<std::string>() == "min";
  auto colors = res.at("colors").get<std::vector<std::uint64_t>>();
  c.add("colors_complete", colors.size() == g.graph.size());
  if (colors.size() != g.graph.size()) return;
  std::uint64_t palette = res.at("palette").get<std::uint64_t>();
  c.add("palette", std::all_of(colors.begin(), colors.end(), [&](auto x) { return x < palette; }),
        "every color below " + std::to_string(palette));
  // H: every graph edge, plus one virtual edge per (manager, neighbour pair) when d2.
  std::vector<std::pair<Index, Index>> edges = g.graph.edges();
  if (d2)
    for (Index m = 0; m < g.graph.size(); ++m) {
      auto nb = g.graph.neighbors(m);
      for (std::size_t i = 0; i < nb.size(); ++i)
        for (std::size_t j = i + 1; j < nb.size(); ++j) edges.emplace_back(nb[i], nb[j]);
    }
  std::vector<Rational> mono(g.graph.size()), all(g.graph.size());
  Rational mono_total, total;
  for (auto [a, b] : edges) {
    Rational w = min_w ? Rational(std::min(g.weight[a], g.weight[b])) : Rational(1);
    all[a] += w;
    all[b] += w;
    total += w;
    if (colors[a] == colors[b]) {
      mono[a] += w;
      mono[b] += w;
      mono_total += w;
    }
  }
  std::string kind = res.at("kind").get<std::string>();
  if (kind == "proper") {
    c.add("proper", mono_total.is_zero(), mono_total.is_zero() ? "" : "monochromatic weight " + mono_total.str());
    if (params.at("algo").get<std::string>() == "three") c.add("three_colors", palette <= 3);
    return;
  }
  Rational delta = rational_from(params.at("delta"));
  if (kind == "per-node") {
    std::vector<std::string> bad;
    for (Index v = 0; v < g.graph.size(); ++v)
      if (mono[v] > delta * all[v]) bad.push_back(std::to_string(g.graph.id(v)));
    c.add("defect_per_node", bad.empty(), bad.empty() ? "" : "nodes over delta: " + list(bad));
  } else {
    c.add("defect_average", mono_total <= delta * total, mono_total.str() + " <= " + (delta * total).str());
  }
  c.add("certificate_totals", rational_from(res.at("mono_total")) == mono_total && rational_from(res.at("weight_total")) == total);
}

void verify_round(const Json& doc, Checks& c) {
  WeightedGraph g = graph_from(doc.at("instance"));
  const auto& res = doc.at("result");
  const auto& params = doc.at("params");
  Rational x = rational_from(params.at("x")), eps = rational_from(params.at("eps"));
  auto set = node_set(g.graph, res.at("labeled_one"), c, "labeled");
  std::vector<char> in(g.graph.size(), 0);
  for (Index v : set) in[v] = 1;
  Rational fu, fc, iu, ic;
  for (Index v = 0; v < g.graph.size(); ++v) {
    fu += Rational(g.weight[v]) * x;
    if (in[v]) iu += Rational(g.weight[v]);
  }
  for (auto [a, b] : g.graph.edges()) {
    Rational m(std::min(g.weight[a], g.weight[b]));
    fc += m * x * x;
    if (in[a] && in[b]) ic += m;
  }
  c.add("fractional_value", rational_from(res.at("before").at("utility")) == fu && rational_from(res.at("before").at("cost")) == fc);
  c.add("integral_value", rational_from(res.at("after").at("utility")) == iu && rational_from(res.at("after").at("cost")) == ic);
  Rational want = (Rational(1) - eps) * (fu - fc);
  c.add("rounding_bound", iu - ic >= want, (iu - ic).str() + " >= (1 - eps)(u - c) = " + want.str());
}

void verify_oracle(const Json& doc, Checks& c) {
  const auto& res = doc.at("result");
  std::string kind = doc.at("params").at("kind").get<std::string>();
  if (kind == "setcover" || doc.at("params").value("lp", "") == "covering") {
    SetCoverInstance inst = cover_from(doc.at("instance"));
    if (kind == "setcover") {
      std::vector<Index> sets;
      for (const auto& n : res.at("witness"))
        for (Index s = 0; s < inst.num_sets(); ++s)
          if (inst.set_names[s] == n.get<std::string>()) sets.push_back(s);
      std::uint64_t cost = 0;
      for (Index s : sets) cost += inst.cost[s];
      c.add("covers", uncovered_elements(inst, sets).empty());
      c.add("cost", cost == res.at("cost").get<std::uint64_t>());
    } else {
      Rational value;
      std::vector<Rational> x;
      for (const auto& v : res.at("x")) x.push_back(rational_from(v));
      bool ok = x.size() == inst.num_sets();
      for (Index s = 0; ok && s < inst.num_sets(); ++s) value += Rational(inst.cost[s]) * x[s];
      for (Index e = 0; ok && e < inst.num_elements(); ++e) {
        Rational sum;
        for (Index s : inst.sets_of[e]) sum += x[s];
        ok = sum >= Rational(1);
      }
      c.add("feasible", ok);
      c.add("value", ok && value == rational_from(res.at("value")));
    }
    return;
  }
  WeightedGraph g = graph_from(doc.at("instance"));
  if (kind == "wis") {
    auto set = node_set(g.graph, res.at("witness"), c, "witness");
    check_independent(g.graph, set, c);
    c.add("weight", weight_of(g, set) == res.at("weight").get<std::uint64_t>());
  } else if (kind == "lp") {
    std::vector<Rational> x;
    for (const auto& v : res.at("x")) x.push_back(rational_from(v));
    bool ok = x.size() == g.graph.size();
    Rational value;
    for (Index v = 0; ok && v < g.graph.size(); ++v) {
      Rational load = x[v];
      for (Index u : g.graph.neighbors(v)) load += x[u];
      ok = x[v].sign() >= 0 && load <= Rational(1);
      value += Rational(g.weight[v]) * x[v];
    }
    c.add("feasible", ok);
    c.add("value", ok && value == rational_from(res.at("value")));
  } else {
    c.add("beta", true, "no certificate; recompute with the oracle");
  }
}

void verify_metrics(const Json& doc, Checks& c) {
  const auto& m = doc.at("metrics");
  const auto& p = doc.at("params");
  std::size_t violations = m.at("violations").size();
  std::uint64_t max_bits = m.at("max_bits").get<std::uint64_t>();
  std::uint64_t budget = p.at("bit_budget").get<std::uint64_t>();
  if (p.at("mode").get<std::string>() == "local") {
    c.add("budget", violations == 0, "LOCAL runs record no violations");
  } else {
    c.add("budget", violations == 0 && max_bits <= budget,
          "max " + std::to_string(max_bits) + " bits per edge per round, budget " + std::to_string(budget) + ", " +
              std::to_string(violations) + " violations");
  }
}

}  // namespace

std::vector<Check> verify_document(const Json& doc) {
  if (!doc.is_object() || doc.value("tool", "") != "dlr" || !doc.contains("command"))
    throw PreconditionError("not a dlr output document");
  std::string cmd = doc.at("command").get<std::string>();
  Checks c;
  if (cmd == "mis")
    verify_mis(doc, c);
  else if (cmd == "matching")
    verify_matching(doc, c);
  else if (cmd == "wis")
    verify_wis(doc, c);
  else if (cmd == "setcover")
    verify_setcover(doc, c);
  else if (cmd == "color")
    verify_color(doc, c);
  else if (cmd == "round")
    verify_round(doc, c);
  else if (cmd == "oracle")
    verify_oracle(doc, c);
  else
    throw PreconditionError("cannot verify command '" + cmd + "'");
  if (cmd != "oracle") verify_metrics(doc, c);
  return c.items;
}

}  // namespace dlr::cli
