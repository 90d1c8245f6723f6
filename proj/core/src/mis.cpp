#include "dlr/mis.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "dlr/errors.hpp"

namespace dlr {

LubyIteration classify_and_select_instar(const Graph& g) {
  const Index n = g.size();
  LubyIteration it;
  it.orient = orient_by_degree_id(g);
  it.good.assign(n, 0);
  it.in_star.assign(n, {});
  it.x.resize(n);
  for (Index v = 0; v < n; ++v) {
    require(g.degree(v) > 0, "isolated node in a Luby iteration");
    it.x[v] = Rational(1, 20 * static_cast<std::int64_t>(g.degree(v)));
  }
  const Rational lo(1, 60), hi(4, 60), out_cap(1, 20);
  for (Index v = 0; v < n; ++v) {
    Rational out;
    for (Index w : it.orient.out[v]) out += it.x[w];
    ensure(out <= out_cap, "out-neighbour marking mass exceeds 1/20");
    if (3 * it.orient.in[v].size() < g.degree(v)) continue;
    it.good[v] = 1;
    // in lists are in ascending index (= NodeId) order.
    Rational sum;
    for (Index u : it.orient.in[v]) {
      if (sum >= lo) break;
      it.in_star[v].push_back(u);
      sum += it.x[u];
    }
    ensure(sum >= lo && sum <= hi, "IN* marking mass outside [1/60, 4/60]");
  }
  return it;
}

MisValuation build_mis_valuation(const std::shared_ptr<const Graph>& g, const LubyIteration& it) {
  const Index n = g->size();
  std::map<std::pair<Index, Index>, Rational> phys;
  for (Index v = 0; v < n; ++v) {
    if (!it.good[v]) continue;
    const Rational half_deg(g->degree(v), 2);
    for (Index u : it.in_star[v])
      for (Index w : it.orient.out[u]) phys[{std::min(u, w), std::max(u, w)}] += half_deg;
  }
  std::vector<std::pair<Index, Index>> physical;
  physical.reserve(phys.size());
  for (const auto& [p, c] : phys) physical.push_back(p);
  std::vector<Index> nodes(n);
  for (Index v = 0; v < n; ++v) nodes[v] = v;

  MisValuation out;
  out.h = build_d2_multigraph(g, nodes, physical, [&](Index m) {
    std::vector<std::pair<Index, Index>> pairs;
    if (!it.good[m]) return pairs;
    const auto& s = it.in_star[m];
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = i + 1; j < s.size(); ++j) pairs.emplace_back(s[i], s[j]);
    return pairs;
  });
  out.val = Valuation(out.h, 2);
  for (std::size_t e = 0; e < out.h.num_edges(); ++e) {
    const auto& he = out.h.edges()[e];
    if (he.kind == EdgeKind::Physical)
      out.val.edge_cost[e].add(1, 1, phys.at({he.a, he.b}));
    else
      out.val.edge_cost[e].add(1, 1, Rational(g->degree(he.manager)));
  }
  for (Index v = 0; v < n; ++v) {
    if (!it.good[v]) continue;
    const Rational half_deg(g->degree(v), 2);
    for (Index u : it.in_star[v]) out.val.add_node_utility(u, 1, half_deg);
  }
  out.x = FractionalAssignment(n, 2);
  out.lambda_min = Rational(1);
  for (Index v = 0; v < n; ++v) {
    out.x.at(v, 1) = it.x[v];
    out.x.at(v, 0) = Rational(1) - it.x[v];
    out.lambda_min = min(out.lambda_min, it.x[v]);
  }
  return out;
}

namespace {

// Marked nodes without a marked out-neighbour join; returns the joined set and
// the removed nodes (joined plus neighbours). Costs two rounds.
std::pair<std::vector<Index>, std::vector<char>> resolve_marks(Engine& engine, const Graph& g,
                                                               const Orientation& orient,
                                                               const std::vector<char>& marked) {
  std::vector<Index> all(g.size());
  for (Index v = 0; v < g.size(); ++v) all[v] = v;
  NeighbourCache<char> cache(g, 0);
  cache.own = marked;
  cache.publish(engine, all, [](Index) { return 1; });
  std::vector<Index> joined;
  for (Index v = 0; v < g.size(); ++v) {
    if (!marked[v]) continue;
    bool blocked = false;
    for (Index w : orient.out[v]) blocked = blocked || cache.heard[*g.slot_of(v, w)];
    if (!blocked) joined.push_back(v);
  }
  std::vector<char> removed(g.size(), 0);
  for (Index v : joined) removed[v] = 1;
  engine.broadcast(joined, [](Index) { return 1; }, [&](Index, Index to, Slot) { removed[to] = 1; });
  return {joined, removed};
}

std::uint64_t count_removed_edges(const Graph& g, const std::vector<char>& removed) {
  std::uint64_t c = 0;
  for (auto [a, b] : g.edges())
    if (removed[a] || removed[b]) ++c;
  return c;
}

}  // namespace

MisIterationResult luby_derandomized_iteration(Engine& engine, const std::shared_ptr<const Graph>& g,
                                               const RoundingOptions& opts) {
  require(g->num_edges() > 0, "iteration needs at least one edge");
  const std::uint64_t start = engine.metrics().rounds;
  engine.rebind(*g);
  // Degrees are exchanged so that every node knows its orientation.
  {
    std::vector<Index> all(g->size());
    for (Index v = 0; v < g->size(); ++v) all[v] = v;
    engine.broadcast(all, [&](Index v) { return bits_for(std::uint64_t{g->degree(v)} + 1); },
                     [](Index, Index, Slot) {});
  }
  LubyIteration it = classify_and_select_instar(*g);
  MisIterationResult res;
  auto& rep = res.report;
  rep.nodes = g->size();
  rep.edges = g->num_edges();
  for (Index v = 0; v < g->size(); ++v)
    if (it.good[v]) rep.good_degree_sum += g->degree(v);
  ensure(2 * rep.good_degree_sum >= rep.edges, "good nodes cover fewer than half the edges");

  MisValuation mv = build_mis_valuation(g, it);
  rep.fractional = evaluate(mv.h, mv.val, mv.x);
  ensure(Rational(2) * rep.fractional.gain() >= rep.fractional.utility, "u(x) - c(x) < u(x)/2");
  ensure(Rational(480) * rep.fractional.utility >= Rational(2 * rep.edges), "u(x)/2 < |E|/480");

  Labeling marks = round_fractional(engine, mv.h, mv.val, mv.x, mv.lambda_min, Rational(1, 2), Rational(1, 2), opts);
  rep.integral = evaluate(mv.h, mv.val, marks);
  ensure(Rational(2) * rep.integral.gain() >= rep.fractional.gain(), "rounding lost more than half of u - c");

  std::vector<char> marked(g->size());
  for (Index v = 0; v < g->size(); ++v) marked[v] = marks[v] == 1;
  auto [joined, removed] = resolve_marks(engine, *g, it.orient, marked);
  res.joined = std::move(joined);
  res.removed = std::move(removed);
  rep.joined = res.joined.size();
  rep.removed_edges = count_removed_edges(*g, res.removed);
  ensure(Rational(rep.removed_edges) >= rep.integral.gain(), "removed edges below the pessimistic estimate");
  rep.rounds = engine.metrics().rounds - start;
  return res;
}

namespace {

template <class IterationFn>
MisResult run_mis(const Graph& g0, Engine& engine, IterationFn&& iteration) {
  MisResult out;
  auto g = std::make_shared<const Graph>(g0);
  for (;;) {
    std::vector<char> keep(g->size(), 1);
    bool any_isolated = false;
    for (Index v = 0; v < g->size(); ++v)
      if (g->degree(v) == 0) {
        out.independent_set.push_back(g->id(v));
        keep[v] = 0;
        any_isolated = true;
      }
    if (any_isolated) g = std::make_shared<const Graph>(g->induced(keep));
    if (g->size() == 0) break;
    MisIterationResult r = iteration(g);
    for (Index v : r.joined) out.independent_set.push_back(g->id(v));
    std::vector<char> next(g->size());
    for (Index v = 0; v < g->size(); ++v) next[v] = !r.removed[v];
    out.iterations.push_back(r.report);
    g = std::make_shared<const Graph>(g->induced(next));
  }
  std::sort(out.independent_set.begin(), out.independent_set.end());
  engine.rebind(g0);
  out.metrics = engine.metrics();
  return out;
}

}  // namespace

MisResult mis(const Graph& g, const MisOptions& opts) {
  Engine engine(g, opts.engine);
  RoundingOptions ropts = RoundingOptions::for_model(opts.engine.model);
  ropts.oracle_coloring = opts.oracle_coloring;
  MisResult out = run_mis(g, engine, [&](const std::shared_ptr<const Graph>& r) {
    return luby_derandomized_iteration(engine, r, ropts);
  });
  return out;
}

MisResult luby_randomized_baseline(const Graph& g, std::uint64_t seed) {
  Engine engine(g);
  std::mt19937_64 rng(seed);
  return run_mis(g, engine, [&](const std::shared_ptr<const Graph>& r) {
    engine.rebind(*r);
    const std::uint64_t start = engine.metrics().rounds;
    Orientation orient = orient_by_degree_id(*r);
    std::vector<char> marked(r->size());
    for (Index v = 0; v < r->size(); ++v) marked[v] = rng() % (20 * std::uint64_t{r->degree(v)}) == 0;
    MisIterationResult res;
    auto [joined, removed] = resolve_marks(engine, *r, orient, marked);
    res.joined = std::move(joined);
    res.removed = std::move(removed);
    res.report.nodes = r->size();
    res.report.edges = r->num_edges();
    res.report.joined = res.joined.size();
    res.report.removed_edges = count_removed_edges(*r, res.removed);
    res.report.rounds = engine.metrics().rounds - start;
    return res;
  });
}

std::uint64_t mis_iteration_bound(std::uint64_t edges) {
  mpz_class lhs = 1, rhs = edges;
  std::uint64_t t = 0;
  while (lhs < rhs) {
    lhs *= 500;
    rhs *= 499;
    ++t;
  }
  return t + 1;
}

}  // namespace dlr
