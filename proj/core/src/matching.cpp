#include "dlr/matching.hpp"

#include <algorithm>
#include <memory>

#include "dlr/errors.hpp"
#include "dlr/indepset.hpp"
#include "dlr/oracle.hpp"

namespace dlr {

ProperColoring line_graph_edge_coloring(Engine& engine, const LineGraphView& view) {
  const Graph& comm = *view.comm;
  const LineGraphInfo& info = *view.info;
  const Index base = info.base_nodes;
  Index delta = 0;
  std::vector<Index> base_nodes;
  for (Index w = 0; w < base; ++w) {
    delta = std::max(delta, comm.degree(w));
    if (comm.degree(w) > 0) base_nodes.push_back(w);
  }
  ProperColoring out;
  out.color.assign(comm.size(), 0);
  if (view.h.nodes().empty()) return out;

  // label[r] = (port at the smaller endpoint, port at the larger), 1-based.
  std::vector<std::pair<Index, Index>> label(comm.size());
  auto inbox = engine.exchange<Index>(base_nodes, [&](Index w, Outbox<Index>& box) {
    auto nb = comm.neighbors(w);
    for (Index s = 0; s < nb.size(); ++s) box.send(nb[s], s + 1, bits_for(std::uint64_t{delta} + 1));
  });
  for (const auto& d : inbox.items()) {
    auto [a, b] = info.endpoints[d.to - base];
    (d.from == a ? label[d.to].first : label[d.to].second) = d.msg;
    (void)b;
  }
  std::vector<std::uint64_t> pair_color(comm.size(), 0);
  for (Index r : view.h.nodes())
    pair_color[r] = std::uint64_t{label[r].first - 1} * delta + (label[r].second - 1);

  std::vector<HEdge> same;
  for (const auto& e : view.h.edges())
    if (pair_color[e.a] == pair_color[e.b]) same.push_back(e);
  Multigraph classes(view.comm, view.h.nodes(), std::move(same));
  ensure(classes.max_degree() <= 2, "label classes are not paths and cycles");
  ProperColoring three = three_color_paths_cycles(engine, classes, id_coloring(classes));
  for (Index r : view.h.nodes()) out.color[r] = 3 * pair_color[r] + three.color[r];
  out.palette = 3 * std::uint64_t{delta} * delta;
  ensure(is_proper(view.h, out.color), "line graph coloring is not proper");
  return out;
}

MatchingResult maximal_matching(const Graph& g0, const MatchingOptions& opts) {
  require(opts.eps.sign() > 0 && opts.eps < Rational(1, 2), "eps must lie in (0, 1/2)");
  MatchingResult out;
  Engine engine(g0, opts.engine);
  RoundingOptions ropts = RoundingOptions::for_model(opts.engine.model);
  ropts.oracle_coloring = opts.oracle_coloring;
  const NodeId first_edge_id = g0.size() ? g0.ids().back() + 1 : 0;
  // Original edge index of every (min, max) index pair.
  const auto all_edges = g0.edges();
  std::vector<char> matched(g0.size(), 0);
  std::vector<std::pair<Index, Index>> m;

  for (;;) {
    std::vector<char> keep(g0.size());
    for (Index v = 0; v < g0.size(); ++v) keep[v] = !matched[v];
    const Graph residual = g0.induced(keep);
    if (residual.num_edges() == 0) break;
    const std::uint64_t start = engine.metrics().rounds;

    auto es = residual.edges();
    std::vector<NodeId> ids(es.size());
    for (std::size_t i = 0; i < es.size(); ++i) {
      Index a = *g0.index_of(residual.id(es[i].first)), b = *g0.index_of(residual.id(es[i].second));
      auto pos = std::lower_bound(all_edges.begin(), all_edges.end(), std::make_pair(a, b));
      ids[i] = first_edge_id + static_cast<NodeId>(pos - all_edges.begin());
    }
    LineGraphView view = line_graph_view(residual, es, ids);
    engine.rebind(*view.comm);
    ProperColoring coloring = line_graph_edge_coloring(engine, view);

    IsInstance inst;
    inst.comm = view.comm;
    inst.h = view.h;
    inst.weight.assign(view.comm->size(), 1);
    inst.line = view.info;
    PackingSolution lp = solve_packing_lp(engine, inst, PackingBackend::DoublingFreeze);
    RoundingOptions step_opts = ropts;
    step_opts.initial = &coloring;
    IsRound r = basic_is_round(engine, inst, lp.x, opts.eps, step_opts);

    MatchingIterationReport rep;
    rep.edges = es.size();
    rep.matched = r.set.size();
    rep.fractional = lp.value;
    ensure(rep.matched >= 1, "an iteration matched no edge");
    // Matched edge-nodes tell their endpoints.
    std::vector<char> hit(view.comm->size(), 0);
    engine.broadcast(r.set, [](Index) { return std::uint64_t{1}; }, [&](Index, Index to, Slot) { hit[to] = 1; });
    const Index base = view.info->base_nodes;
    for (Index e : r.set) {
      auto [a, b] = view.info->endpoints[e - base];
      Index ga = *g0.index_of(residual.id(a)), gb = *g0.index_of(residual.id(b));
      ensure(hit[a] && hit[b] && !matched[ga] && !matched[gb], "selected edges share an endpoint");
      matched[ga] = matched[gb] = 1;
      m.emplace_back(std::min(ga, gb), std::max(ga, gb));
    }
    rep.rounds = engine.metrics().rounds - start;
    out.iterations.push_back(rep);
  }
  ensure(is_maximal_matching(g0, m), "result is not a maximal matching");
  ensure(out.iterations.size() <= matching_iteration_bound(g0.num_edges(), opts.eps),
         "more iterations than the proven bound");
  for (auto [a, b] : m) {
    NodeId x = g0.id(a), y = g0.id(b);
    out.matching.emplace_back(std::min(x, y), std::max(x, y));
  }
  std::sort(out.matching.begin(), out.matching.end());
  engine.rebind(g0);
  out.metrics = engine.metrics();
  return out;
}

std::uint64_t matching_iteration_bound(std::uint64_t edges, const Rational& eps) {
  require(eps.sign() > 0 && eps < Rational(1, 2), "eps must lie in (0, 1/2)");
  const Rational keep = Rational(1) - (Rational(1, 2) - eps) / Rational(4);
  Rational left(static_cast<std::int64_t>(edges));
  std::uint64_t t = 0;
  while (left >= Rational(1)) {
    left *= keep;
    ++t;
  }
  return t + 1;
}

}  // namespace dlr
