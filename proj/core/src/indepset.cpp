#include "dlr/indepset.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "dlr/coloring.hpp"
#include "dlr/errors.hpp"

namespace dlr {

IsInstance IsInstance::of(const WeightedGraph& g) {
  require(g.weight.size() == g.graph.size(), "one weight per node is required");
  for (auto w : g.weight) require(w > 0, "node weights must be positive");
  IsInstance inst;
  inst.comm = std::make_shared<const Graph>(g.graph);
  inst.h = Multigraph::from_graph(inst.comm);
  inst.weight = g.weight;
  inst.line = g.line;
  return inst;
}

std::uint64_t IsInstance::weight_of(const std::vector<Index>& set) const {
  std::uint64_t s = 0;
  for (Index v : set) s += weight[v];
  return s;
}

std::uint64_t IsInstance::total_weight() const {
  std::uint64_t s = 0;
  for (Index v : h.nodes()) s += weight[v];
  return s;
}

namespace {

// Closed H-neighbourhood of v, ascending and without repeats.
std::vector<Index> closed_neighbourhood(const Multigraph& h, Index v) {
  std::vector<Index> out{v};
  for (Index e : h.incident(v)) out.push_back(h.other(e, v));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Rational> to_rational(const std::vector<std::uint64_t>& w) {
  std::vector<Rational> out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = Rational(w[i]);
  return out;
}

// Residual weights are integers; the instance keeps them as such.
IsInstance reweighted(const IsInstance& inst, const std::vector<Rational>& w) {
  IsInstance out = inst;
  for (Index v : inst.h.nodes()) {
    ensure(w[v].is_integer() && w[v].sign() >= 0, "residual weights must stay non-negative integers");
    out.weight[v] = w[v].num().get_ui();
  }
  return out;
}

Rational sum_over(const std::vector<Rational>& w, const std::vector<Index>& set) {
  Rational s;
  for (Index v : set) s += w[v];
  return s;
}

RoundingOptions with_initial(const RoundingOptions& opts, Engine& engine, const Multigraph& h,
                             ProperColoring& storage) {
  RoundingOptions out = opts;
  if (!out.initial) {
    storage = linial_coloring(engine, h);
    out.initial = &storage;
  }
  return out;
}

}  // namespace

Valuation is_utility_cost(const IsInstance& inst) {
  Valuation val(inst.h, 2);
  for (std::size_t e = 0; e < inst.h.num_edges(); ++e) {
    const auto& he = inst.h.edges()[e];
    val.edge_cost[e].add(1, 1, Rational(std::min(inst.weight[he.a], inst.weight[he.b])));
  }
  for (Index v : inst.h.nodes()) val.add_node_utility(v, 1, Rational(inst.weight[v]));
  return val;
}

UtilityCost is_value(const IsInstance& inst, const std::vector<Rational>& x) {
  UtilityCost r;
  for (Index v : inst.h.nodes())
    if (!x[v].is_zero()) r.utility += Rational(inst.weight[v]) * x[v];
  for (const auto& e : inst.h.edges())
    if (!x[e.a].is_zero() && !x[e.b].is_zero())
      r.cost += Rational(std::min(inst.weight[e.a], inst.weight[e.b])) * x[e.a] * x[e.b];
  return r;
}

std::vector<Index> extract_is(Engine& engine, const IsInstance& inst, const std::vector<char>& selected) {
  const Multigraph& h = inst.h;
  const Graph& g = h.comm();
  // (weight, NodeId) of a selected node; `none` for unselected ones.
  using Key = std::tuple<bool, std::uint64_t, NodeId>;
  const Key none{false, 0, 0};
  NeighbourCache<Key> cache(g, none);
  for (Index v : h.nodes())
    if (selected[v]) cache.own[v] = Key{true, inst.weight[v], g.id(v)};
  cache.publish(engine, h.nodes(), [&](Index v) { return 1 + (selected[v] ? bits_for(inst.weight[v] + 1) : 0); });

  std::vector<Key> best(g.size(), none);
  const auto& lay = h.layout();
  gather_from_handlers<Key>(
      engine, h, h.nodes(),
      [&](const HandlerGroup& gr) {
        Key k = none;
        for (std::uint32_t i = gr.begin; i < gr.end; ++i) k = std::max(k, cache.heard[lay.handled[i].other_slot]);
        return k;
      },
      [&](const Key& k) { return 1 + (std::get<0>(k) ? bits_for(std::get<1>(k) + 1) + bits_for(g.size()) : 0); },
      [&](Index v, Key&& k) { best[v] = std::max(best[v], k); });

  std::vector<Index> out;
  for (Index v : h.nodes())
    if (selected[v] && !(best[v] > cache.own[v])) out.push_back(v);
  std::sort(out.begin(), out.end());

  std::vector<char> in(g.size(), 0);
  for (Index v : out) in[v] = 1;
  Rational u, c;
  for (Index v : h.nodes())
    if (selected[v]) u += Rational(inst.weight[v]);
  for (const auto& e : h.edges()) {
    ensure(!(in[e.a] && in[e.b]), "extracted set is not independent");
    if (selected[e.a] && selected[e.b]) c += Rational(std::min(inst.weight[e.a], inst.weight[e.b]));
  }
  ensure(Rational(inst.weight_of(out)) >= u - c, "extracted weight below u(x) - c(x)");
  return out;
}

IsRound basic_is_round(Engine& engine, const IsInstance& inst, const std::vector<Rational>& x, const Rational& eps,
                       const RoundingOptions& opts) {
  require(eps.sign() > 0 && eps < Rational(1), "eps must lie in (0, 1)");
  require(x.size() == inst.comm->size(), "one fractional value per node is required");
  const Multigraph& h = inst.h;
  for (Index v : h.nodes()) require(x[v].sign() >= 0 && x[v] <= Rational(1), "fractional values must lie in [0, 1]");
  IsRound out;
  out.fractional = is_value(inst, x);
  require(out.fractional.utility >= Rational(2) * out.fractional.cost, "basic rounding needs u(x) >= 2 c(x)");
  out.bound = (Rational(1, 2) - eps) * out.fractional.utility;

  std::vector<char> selected(inst.comm->size(), 0);
  const Index delta = h.max_degree();
  if (delta == 0) {
    for (Index v : h.nodes()) selected[v] = 1;
  } else {
    const Rational a = eps / Rational(2 * static_cast<std::int64_t>(delta));
    const Rational scale = (Rational(1) + a).inverse();
    std::vector<Rational> shifted(x.size());
    FractionalAssignment lam(inst.comm->size(), 2);
    for (Index v : h.nodes()) {
      shifted[v] = (x[v] + a) * scale;
      lam.at(v, 1) = shifted[v];
      lam.at(v, 0) = Rational(1) - shifted[v];
    }
    const Rational mu = (Rational(1) - eps) / Rational(2);
    const UtilityCost s = is_value(inst, shifted);
    ensure(s.utility >= out.fractional.utility, "shift decreased the utility");
    ensure(s.gain() >= mu * s.utility, "shifted point violates u - c >= (1 - eps)/2 u");

    ProperColoring storage;
    const RoundingOptions ropts = with_initial(opts, engine, h, storage);
    const Valuation val = is_utility_cost(inst);
    Labeling l = round_fractional(engine, h, val, lam, smallest_nonzero(h, lam), eps, mu, ropts);
    for (Index v : h.nodes()) selected[v] = l[v] == 1;
  }
  out.set = extract_is(engine, inst, selected);
  out.weight = inst.weight_of(out.set);
  ensure(Rational(out.weight) >= out.bound, "independent set below (1/2 - eps) u(x)");
  return out;
}

PackingSolution solve_packing_lp(Engine& engine, const IsInstance& inst, PackingBackend backend,
                                 const OracleBudget& budget) {
  const Multigraph& h = inst.h;
  const Index n = inst.comm->size();
  PackingSolution out;
  out.x.assign(n, Rational());

  if (backend == PackingBackend::CentralExact) {
    const auto& nodes = h.nodes();
    std::vector<std::size_t> var(n, 0);
    for (std::size_t i = 0; i < nodes.size(); ++i) var[nodes[i]] = i;
    LinearProgram lp;
    lp.num_vars = nodes.size();
    for (Index v : nodes) lp.objective.push_back(Rational(inst.weight[v]));
    for (Index v : nodes) {
      LinearProgram::Row row;
      for (Index u : closed_neighbourhood(h, v)) row.coeffs.emplace_back(var[u], Rational(1));
      row.rhs = Rational(1);
      lp.rows.push_back(std::move(row));
    }
    LpSolution s = solve_exact(lp, budget);
    ensure(s.status == LpStatus::Optimal, "packing LP is not optimal");
    for (std::size_t i = 0; i < nodes.size(); ++i) out.x[nodes[i]] = s.x[i];
    out.value = s.value;
    out.upper = s.value;
    engine.metrics().oracle_assisted = true;
    return out;
  }

  require(inst.line != nullptr, "doubling-freeze needs a line-graph instance");
  for (Index v : h.nodes()) require(inst.weight[v] == 1, "doubling-freeze needs unit weights");
  const Graph& comm = *inst.comm;
  const Index base = inst.line->base_nodes;
  std::vector<Index> base_nodes(base);
  for (Index b = 0; b < base; ++b) base_nodes[b] = b;
  Index delta = 0;
  for (Index b = 0; b < base; ++b) delta = std::max(delta, comm.degree(b));
  if (delta == 0) return out;

  std::vector<char> frozen(n, 0);
  const Rational quarter(1, 4);
  for (Index e : h.nodes()) out.x[e] = Rational(1, 2 * static_cast<std::int64_t>(delta));
  for (;;) {
    // Endpoints announce saturation; edge-nodes touching a saturated endpoint freeze.
    std::vector<char> saturated(n, 0);
    for (Index b : base_nodes) {
      Rational s;
      for (Index e : comm.neighbors(b)) s += out.x[e];
      saturated[b] = s >= quarter;
    }
    engine.broadcast(base_nodes, [](Index) { return std::uint64_t{1}; },
                     [&](Index from, Index to, Slot) { frozen[to] = frozen[to] || saturated[from]; });
    std::vector<Index> active;
    for (Index e : h.nodes())
      if (!frozen[e]) active.push_back(e);
    if (active.empty()) break;
    for (Index e : active) out.x[e] *= Rational(2);
    // Endpoints learn which of their edges doubled.
    engine.broadcast(active, [](Index) { return std::uint64_t{1}; }, [](Index, Index, Slot) {});
  }
  for (Index v : h.nodes()) {
    out.value += out.x[v];
    Rational s;
    for (Index u : closed_neighbourhood(h, v)) s += out.x[u];
    ensure(s <= Rational(1), "doubling-freeze point is not feasible");
    ensure(Rational(4) * s >= Rational(1), "4x is not a feasible dual point");
  }
  out.upper = Rational(4) * out.value;
  return out;
}

IsRound lp_guided_is(Engine& engine, const IsInstance& inst, const PackingSolution& lp, const RoundingOptions& opts) {
  require(Rational(2) * lp.value > lp.upper, "LP point must be better than a 1/2-approximation");
  const UtilityCost uc = is_value(inst, lp.x);
  ensure(uc.utility >= Rational(2) * uc.cost, "feasible LP point with u(x) < 2 c(x)");
  // (1/2 - eps) value >= upper / 4 for every eps up to 1/2 - upper/(4 value).
  Rational eps = (Rational(1, 2) - lp.upper / (Rational(4) * lp.value)) / Rational(2);
  eps = min(eps, Rational(1, 8));
  IsRound r = basic_is_round(engine, inst, lp.x, eps, opts);
  ensure(Rational(4) * Rational(r.weight) >= lp.upper, "independent set below S*(w)/4");
  r.bound = lp.upper / Rational(4);
  return r;
}

std::vector<Rational> deduct_weights(const IsInstance& inst, const std::vector<Rational>& w,
                                     const std::vector<Index>& set) {
  const Multigraph& h = inst.h;
  std::vector<char> in(inst.comm->size(), 0);
  for (Index v : set) in[v] = 1;
  std::vector<Rational> next = w;
  for (Index u : h.nodes()) {
    Rational s;
    for (Index v : closed_neighbourhood(h, u))
      if (in[v]) s += w[v];
    next[u] = max(Rational(), w[u] - s);
  }
  return next;
}

std::vector<Index> local_ratio_combine(Engine& engine, const IsInstance& inst,
                                       const std::vector<LocalRatioStep>& steps) {
  const Multigraph& h = inst.h;
  const Graph& g = h.comm();
  const auto& lay = h.layout();
  std::vector<char> in(g.size(), 0), blocked(g.size(), 0);
  Rational collected;
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    collected += it->gained;
    std::vector<Index> joined;
    for (Index v : it->set)
      if (!blocked[v] && !in[v]) joined.push_back(v);
    for (Index v : joined) in[v] = blocked[v] = 1;
    // New members announce themselves; handlers tell the other endpoints.
    NeighbourCache<char> cache(g, 0);
    for (Index v : joined) cache.own[v] = 1;
    cache.publish(engine, joined, [](Index) { return std::uint64_t{1}; });
    gather_from_handlers<char>(
        engine, h, h.nodes(),
        [&](const HandlerGroup& gr) {
          char any = 0;
          for (std::uint32_t i = gr.begin; i < gr.end; ++i) any = any || cache.heard[lay.handled[i].other_slot];
          return any;
        },
        [](char) { return std::uint64_t{1}; }, [&](Index v, char&& any) { blocked[v] = blocked[v] || any; });
  }
  std::vector<Index> out;
  for (Index v : h.nodes())
    if (in[v]) out.push_back(v);
  for (const auto& e : h.edges()) ensure(!(in[e.a] && in[e.b]), "combined set is not independent");
  ensure(Rational(inst.weight_of(out)) >= collected, "combined weight below sum of w_i(I_i)");
  return out;
}

std::uint64_t boosting_rounds(const Rational& eps, const Rational& rho) {
  require(eps.sign() > 0 && eps < Rational(1), "eps must lie in (0, 1)");
  require(rho.sign() > 0 && rho < Rational(1), "rho must lie in (0, 1)");
  auto t = static_cast<std::uint64_t>(std::ceil(std::log(1 / eps.to_double()) / rho.to_double()));
  while (pow(Rational(1) - rho, t) > eps) ++t;
  return t;
}

Rational caro_wei_bound(const WeightedGraph& g) {
  Rational s;
  for (Index v = 0; v < g.graph.size(); ++v) {
    std::uint64_t wn = g.weight[v];
    for (Index u : g.graph.neighbors(v)) wn += g.weight[u];
    s += Rational(g.weight[v]) * Rational(g.weight[v]) / Rational(wn);
  }
  return s;
}

namespace {

RoundingOptions rounding_options(const WisOptions& opts) {
  RoundingOptions r = RoundingOptions::for_model(opts.engine.model);
  r.oracle_coloring = opts.oracle_coloring;
  return r;
}

WisResult finish(const IsInstance& inst, const std::vector<Index>& set, Engine& engine) {
  WisResult out;
  for (Index v : set) out.independent_set.push_back(inst.comm->id(v));
  std::sort(out.independent_set.begin(), out.independent_set.end());
  out.weight = inst.weight_of(set);
  out.metrics = engine.metrics();
  return out;
}

// Runs the local-ratio sequence. `pick(inst_t, w_t)` returns I_t together
// with the reference value r_t it guarantees w_t(I_t) >= rho r_t against;
// `reference_of(w)` evaluates the same reference for the invariant
// Upsilon_t <= reference(w_{t+1}).
template <class PickFn, class RefFn>
WisResult run_local_ratio(Engine& engine, const IsInstance& inst, const Rational& eps, const Rational& rho,
                          const Rational& upsilon0, PickFn&& pick, RefFn&& reference_of) {
  const std::uint64_t T = boosting_rounds(eps, rho);
  LocalRatioTrace trace;
  trace.rho = rho;
  trace.upsilon0 = upsilon0;
  std::vector<Rational> w = to_rational(inst.weight);
  Rational upsilon = upsilon0, decay(1);
  Rational reference = reference_of(w);
  for (std::uint64_t t = 1; t <= T; ++t) {
    bool any = false;
    for (Index v : inst.h.nodes()) any = any || w[v].sign() > 0;
    if (!any) break;
    ensure(upsilon <= reference, "Upsilon above the reference value of the residual weights");
    const IsInstance cur = reweighted(inst, w);
    std::vector<Index> picked = pick(cur, reference);
    LocalRatioStep step;
    for (Index v : picked)
      if (w[v].sign() > 0) step.set.push_back(v);
    step.weight = w;
    step.gained = sum_over(w, step.set);
    step.reference = reference;
    ensure(step.gained >= rho * reference, "w_i(I_i) below rho times the reference");
    std::vector<Rational> next = deduct_weights(inst, w, step.set);
    step.deducted.resize(w.size());
    for (Index v : inst.h.nodes()) step.deducted[v] = w[v] - next[v];
    // y = w'_i on I_i is feasible for the dual of the packing LP under w'_i.
    std::vector<char> in(w.size(), 0);
    for (Index v : step.set) in[v] = 1;
    for (Index v : inst.h.nodes()) {
      Rational cover;
      for (Index u : closed_neighbourhood(inst.h, v))
        if (in[u]) cover += step.deducted[u];
      ensure(cover >= step.deducted[v], "w'_i on I_i is not dual feasible");
    }
    ensure(sum_over(step.deducted, step.set) == step.gained, "w'_i(I_i) differs from w_i(I_i)");
    upsilon -= step.gained;
    decay *= Rational(1) - rho;
    ensure(upsilon <= decay * upsilon0, "Upsilon above (1 - rho)^t Upsilon_0");
    step.upsilon = upsilon;
    w = std::move(next);
    reference = reference_of(w);
    trace.steps.push_back(std::move(step));
  }
  ensure(upsilon <= reference, "Upsilon above the reference value of the residual weights");
  std::vector<Index> set = local_ratio_combine(engine, inst, trace.steps);
  WisResult out = finish(inst, set, engine);
  out.bound = (Rational(1) - eps) * upsilon0;
  ensure(Rational(out.weight) >= out.bound, "local-ratio set below (1 - eps) of the target");
  out.trace = std::move(trace);
  return out;
}

}  // namespace

WisResult wis_basic(const WeightedGraph& g, const std::vector<Rational>& x, const WisOptions& opts) {
  const IsInstance inst = IsInstance::of(g);
  Engine engine(*inst.comm, opts.engine);
  IsRound r = basic_is_round(engine, inst, x, opts.eps, rounding_options(opts));
  WisResult out = finish(inst, r.set, engine);
  out.bound = r.bound;
  out.x = x;
  return out;
}

WisResult wis_lp_guided(const WeightedGraph& g, const WisOptions& opts) {
  const IsInstance inst = IsInstance::of(g);
  Engine engine(*inst.comm, opts.engine);
  PackingSolution lp = solve_packing_lp(engine, inst, PackingBackend::CentralExact, opts.budget);
  IsRound r = lp_guided_is(engine, inst, lp, rounding_options(opts));
  WisResult out = finish(inst, r.set, engine);
  out.bound = r.bound;
  out.x = lp.x;
  return out;
}

WisResult beta_approx_is(const WeightedGraph& g, const WisOptions& opts) {
  const IsInstance inst = IsInstance::of(g);
  Engine engine(*inst.comm, opts.engine);
  ProperColoring coloring;
  const RoundingOptions ropts = with_initial(rounding_options(opts), engine, inst.h, coloring);
  auto s_star = [&](const std::vector<Rational>& w) {
    bool any = false;
    for (Index v : inst.h.nodes()) any = any || w[v].sign() > 0;
    if (!any) return Rational();
    return solve_packing_lp(engine, reweighted(inst, w), PackingBackend::CentralExact, opts.budget).value;
  };
  const Rational upsilon0 = s_star(to_rational(inst.weight));
  return run_local_ratio(
      engine, inst, opts.eps, Rational(1, 4), upsilon0,
      [&](const IsInstance& cur, const Rational&) {
        PackingSolution lp = solve_packing_lp(engine, cur, PackingBackend::CentralExact, opts.budget);
        return lp_guided_is(engine, cur, lp, ropts).set;
      },
      s_star);
}

WisResult turan_fraction_is(const WeightedGraph& g, const WisOptions& opts) {
  const IsInstance inst = IsInstance::of(g);
  Engine engine(*inst.comm, opts.engine);
  ProperColoring coloring;
  const RoundingOptions ropts = with_initial(rounding_options(opts), engine, inst.h, coloring);
  const Rational share(1, static_cast<std::int64_t>(inst.h.max_degree()) + 1);
  auto reference = [&](const std::vector<Rational>& w) {
    Rational s;
    for (Index v : inst.h.nodes()) s += w[v];
    return s * share;
  };
  std::vector<Rational> x(inst.comm->size());
  for (Index v : inst.h.nodes()) x[v] = share;
  WisResult out = run_local_ratio(
      engine, inst, opts.eps, Rational(1, 4), reference(to_rational(inst.weight)),
      [&](const IsInstance& cur, const Rational&) { return basic_is_round(engine, cur, x, Rational(1, 8), ropts).set; },
      reference);
  out.x = x;
  return out;
}

WisResult caro_wei_is(const WeightedGraph& g, const WisOptions& opts) {
  const IsInstance inst = IsInstance::of(g);
  Engine engine(*inst.comm, opts.engine);
  std::vector<Rational> x(g.graph.size());
  Rational w_total, nb_total;
  for (Index v = 0; v < g.graph.size(); ++v) {
    std::uint64_t wn = g.weight[v];
    for (Index u : g.graph.neighbors(v)) wn += g.weight[u];
    x[v] = Rational(g.weight[v]) / Rational(wn);
    w_total += Rational(g.weight[v]);
    nb_total += Rational(wn - g.weight[v]);
  }
  const UtilityCost uc = is_value(inst, x);
  ensure(uc.utility >= Rational(2) * uc.cost, "Caro-Wei point with u(x) < 2 c(x)");
  const Rational cw = caro_wei_bound(g);
  ensure(uc.utility == cw, "u(x) differs from the Caro-Wei sum");
  if (g.graph.size() > 0) ensure(cw * (w_total + nb_total) >= w_total * w_total, "Caro-Wei sum below w(V)^2/(w(V) + sum w(N(v)))");
  IsRound r = basic_is_round(engine, inst, x, opts.eps, rounding_options(opts));
  WisResult out = finish(inst, r.set, engine);
  out.bound = r.bound;
  out.x = std::move(x);
  return out;
}

}  // namespace dlr
