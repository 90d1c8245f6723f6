#include "dlr/setcover.hpp"

#include <algorithm>

#include "dlr/errors.hpp"
#include "dlr/oracle.hpp"

namespace dlr {

std::vector<Rational> build_scaled_x(const SetCoverInstance& inst, const std::vector<Rational>& x0) {
  require(x0.size() == inst.num_sets(), "one fractional value per set is required");
  const std::int64_t t = std::max<Index>(1, inst.max_element_degree());
  const Rational cut(1, 2 * t), lo(1, 20 * t), hi(1, 10);
  std::vector<Rational> x(x0.size());
  for (Index v = 0; v < inst.num_sets(); ++v) {
    require(x0[v].sign() >= 0 && x0[v] <= Rational(1), "fractional cover values must lie in [0, 1]");
    if (x0[v] > cut) x[v] = x0[v] / Rational(10);
    ensure(x[v].is_zero() || (x[v] >= lo && x[v] <= hi), "scaled value outside {0} u [1/(20t), 1/10]");
  }
  for (Index u = 0; u < inst.num_elements(); ++u) {
    Rational s0, s;
    for (Index v : inst.sets_of[u]) {
      s0 += x0[v];
      s += x[v];
    }
    require(s0 >= Rational(1), "x0 is not a fractional cover");
    ensure(s >= Rational(1, 20), "scaled cover below 1/20 at an element");
  }
  return x;
}

std::vector<std::vector<Index>> select_n_star(const SetCoverInstance& inst, const std::vector<Rational>& x) {
  const Rational lo(1, 20), hi(1, 5);
  std::vector<std::vector<Index>> out(inst.num_elements());
  for (Index u = 0; u < inst.num_elements(); ++u) {
    Rational s;
    for (Index v : inst.sets_of[u]) {
      if (s >= lo) break;
      if (x[v].is_zero()) continue;
      out[u].push_back(v);
      s += x[v];
    }
    ensure(s >= lo && s <= hi, "N*(u) mass outside [1/20, 1/5]");
  }
  return out;
}

std::vector<Index> threshold_cover(const SetCoverInstance& inst, const std::vector<Rational>& x0) {
  const Rational cut(1, std::max<Index>(1, inst.max_element_degree()));
  std::vector<Index> out;
  for (Index v = 0; v < inst.num_sets(); ++v)
    if (x0[v] >= cut) out.push_back(v);
  ensure(uncovered_elements(inst, out).empty(), "threshold cover leaves an element uncovered");
  return out;
}

std::uint64_t cover_tau(std::uint64_t bound) {
  std::uint64_t tau = 1;
  Rational p(101, 100);
  const Rational target(static_cast<std::int64_t>(bound));
  while (p < target) {
    p *= Rational(101, 100);
    ++tau;
  }
  return tau;
}

namespace {

Rational scale_at(const CoverState& st, std::uint64_t i) {
  // i runs up to tau + 1, where the weight is 1.01 W.
  return i <= st.tau ? st.unit_weight / pow(Rational(101, 100), st.tau - i)
                     : st.unit_weight * pow(Rational(101, 100), i - st.tau);
}

std::vector<Index> range(Index from, Index to) {
  std::vector<Index> out(to - from);
  for (Index i = from; i < to; ++i) out[i - from] = i;
  return out;
}

Multigraph n_star_multigraph(const CoverState& st, const std::vector<char>* uncovered) {
  const Index nv = st.inst->num_sets();
  return build_d2_multigraph(st.comm, range(0, nv), {}, [&](Index m) {
    std::vector<std::pair<Index, Index>> pairs;
    if (m < nv || (uncovered && !(*uncovered)[m - nv])) return pairs;
    const auto& s = st.n_star[m - nv];
    for (std::size_t a = 0; a < s.size(); ++a)
      for (std::size_t b = a + 1; b < s.size(); ++b) pairs.emplace_back(s[a], s[b]);
    return pairs;
  });
}

}  // namespace

Rational cover_potential(const CoverState& st, std::uint64_t i, std::uint64_t uncovered, const Rational& spent) {
  Rational slack = Rational(3) * st.opt_bound;
  const Rational steps = Rational(static_cast<std::int64_t>(st.tau)) - Rational(static_cast<std::int64_t>(i));
  return scale_at(st, i) * Rational(static_cast<std::int64_t>(uncovered)) + spent + steps * slack;
}

std::vector<Index> cover_iteration(Engine& engine, const CoverState& st, std::uint64_t i,
                                   const std::vector<char>& uncovered, const RoundingOptions& opts,
                                   CoverIterationReport* report) {
  const SetCoverInstance& inst = *st.inst;
  const Index nv = inst.num_sets(), nu = inst.num_elements();
  const std::uint64_t start = engine.metrics().rounds;
  CoverIterationReport rep;
  rep.i = i;
  rep.scale = scale_at(st, i);
  for (Index u = 0; u < nu; ++u) rep.uncovered += uncovered[u] != 0;
  std::vector<Index> chosen;
  if (rep.uncovered == 0) {
    rep.skipped = true;
    if (report) *report = rep;
    return chosen;
  }

  // Uncovered elements tell their N* sets that they still count.
  std::vector<std::uint64_t> count(nv, 0);
  std::vector<Index> senders;
  for (Index u = 0; u < nu; ++u)
    if (uncovered[u]) senders.push_back(nv + u);
  auto inbox = engine.exchange<char>(senders, [&](Index e, Outbox<char>& box) {
    for (Index v : st.n_star[e - nv]) box.send(v, 1, 1);
  });
  for (const auto& d : inbox.items()) ++count[d.to];

  Multigraph h = n_star_multigraph(st, &uncovered);
  Valuation val(h, 2);
  const Rational pair_cost = Rational(2) * rep.scale;
  for (std::size_t e = 0; e < h.num_edges(); ++e) val.edge_cost[e].add(1, 1, pair_cost);
  FractionalAssignment lam(st.comm->size(), 2);
  for (Index v = 0; v < nv; ++v) {
    const Rational w(inst.cost[v]);
    if (count[v]) val.add_node_utility(v, 1, rep.scale * Rational(static_cast<std::int64_t>(count[v])));
    if (!st.x[v].is_zero()) {
      val.add_node_utility(v, 0, Rational(10) * w * st.x[v]);
      val.add_node_utility(v, 1, Rational(10) * w * st.x[v]);
    }
    val.add_node_cost(v, 1, w);
    lam.at(v, 1) = st.x[v];
    lam.at(v, 0) = Rational(1) - st.x[v];
  }
  rep.fractional = evaluate(h, val, lam);
  ensure(Rational(5) * rep.fractional.cost <= rep.fractional.utility, "c(x) > u(x)/5");

  RoundingOptions ro = opts;
  ro.initial = &st.coloring;
  Labeling l = round_fractional(engine, h, val, lam, smallest_nonzero(h, lam), Rational(1, 100), Rational(1, 2), ro);
  rep.integral = evaluate(h, val, l);
  for (Index v = 0; v < nv; ++v)
    if (l[v] == 1) {
      chosen.push_back(v);
      rep.selected_cost += inst.cost[v];
    }
  rep.selected = chosen.size();

  std::vector<char> hit(st.comm->size(), 0);
  engine.broadcast(chosen, [](Index) { return std::uint64_t{1}; }, [&](Index, Index to, Slot) { hit[to] = 1; });
  for (Index u = 0; u < nu; ++u) rep.newly_covered += uncovered[u] && hit[nv + u];

  const Rational lhs = rep.scale * Rational(static_cast<std::int64_t>(rep.newly_covered)) -
                       Rational(static_cast<std::int64_t>(rep.selected_cost));
  const Rational rhs = rep.scale * Rational(static_cast<std::int64_t>(rep.uncovered)) / Rational(50) -
                       Rational(3) * st.opt_bound;
  ensure(lhs >= rhs, "iteration progress below scale |U_i|/50 - 3 OPT_bound");
  rep.rounds = engine.metrics().rounds - start;
  if (report) *report = rep;
  return chosen;
}

SetCoverResult set_cover(const SetCoverInstance& inst, const SetCoverOptions& opts) {
  const Index nv = inst.num_sets(), nu = inst.num_elements();
  SetCoverResult out;
  CoverState st;
  st.inst = &inst;
  st.comm = inst.comm_graph();
  Engine engine(*st.comm, opts.engine);
  if (nu == 0) {
    out.metrics = engine.metrics();
    return out;
  }

  out.fractional = fractional_cover(inst, opts.backend, opts.budget);
  engine.metrics().oracle_assisted = true;
  const FractionalCover& fc = out.fractional;
  ensure(fc.factor <= Rational(2), "fractional backend factor above 2");
  ensure(fc.value <= fc.factor * fc.dual_value, "fractional cover not certified by its dual");

  const std::int64_t s = std::max<Index>(1, inst.max_set_size());
  const std::uint64_t w_max = inst.weighted ? inst.max_cost() : 1;
  st.unit_weight = Rational(static_cast<std::int64_t>(w_max));
  st.tau = cover_tau(static_cast<std::uint64_t>(s) * w_max);
  // Each set holds at most s elements at cost >= 1, so OPT >= |U|/s.
  st.opt_bound = max(fc.dual_value, Rational(static_cast<std::int64_t>(nu), s));
  st.x = build_scaled_x(inst, fc.x);
  Rational spent_frac;
  for (Index v = 0; v < nv; ++v) spent_frac += Rational(inst.cost[v]) * st.x[v];
  ensure(Rational(10) * spent_frac <= Rational(2) * st.opt_bound, "scaled cost above 2 OPT_bound / 10");

  // Sets announce x_v; elements pick N*(u) and tell the chosen sets.
  const auto set_nodes = range(0, nv), element_nodes = range(nv, nv + nu);
  engine.broadcast(set_nodes, [&](Index v) { return st.x[v].is_zero() ? 1 : 2 * bits_for(20 * s) + 8; },
                   [](Index, Index, Slot) {});
  st.n_star = select_n_star(inst, st.x);
  engine.broadcast(element_nodes, [](Index) { return std::uint64_t{1}; }, [](Index, Index, Slot) {});

  const Multigraph full = n_star_multigraph(st, nullptr);
  if (opts.engine.model == Model::Local)
    st.coloring = linial_coloring(engine, full);
  else
    st.coloring = id_coloring(full);

  RoundingOptions ropts = RoundingOptions::for_model(opts.engine.model);
  ropts.oracle_coloring = opts.oracle_coloring;
  out.tau = st.tau;
  out.opt_bound = st.opt_bound;

  std::vector<char> uncovered(nu, 1), in_cover(nv, 0);
  std::uint64_t left = nu;
  Rational spent;
  out.phi.push_back(cover_potential(st, 1, left, spent));
  for (std::uint64_t i = 1; i <= st.tau; ++i) {
    CoverIterationReport rep;
    std::vector<Index> chosen = cover_iteration(engine, st, i, uncovered, ropts, &rep);
    for (Index v : chosen) {
      in_cover[v] = 1;
      for (Index u : inst.elements_of[v])
        if (uncovered[u]) {
          uncovered[u] = 0;
          --left;
        }
    }
    spent += Rational(static_cast<std::int64_t>(rep.selected_cost));
    out.phi.push_back(cover_potential(st, i + 1, left, spent));
    ensure(out.phi.back() <= out.phi[out.phi.size() - 2], "potential increased");
    out.iterations.push_back(rep);
  }

  // Each uncovered element adds its smallest neighbouring set.
  std::vector<Index> completion;
  std::vector<Index> askers;
  for (Index u = 0; u < nu; ++u)
    if (uncovered[u]) {
      askers.push_back(nv + u);
      completion.push_back(inst.sets_of[u].front());
    }
  engine.exchange<char>(askers, [&](Index e, Outbox<char>& box) { box.send(inst.sets_of[e - nv].front(), 1, 1); });
  std::sort(completion.begin(), completion.end());
  completion.erase(std::unique(completion.begin(), completion.end()), completion.end());
  for (Index v : completion) {
    out.completion_cost += inst.cost[v];
    in_cover[v] = 1;
  }
  out.completion = std::move(completion);
  for (Index v = 0; v < nv; ++v)
    if (in_cover[v]) {
      out.cover.push_back(v);
      out.cost += inst.cost[v];
    }
  ensure(uncovered_elements(inst, out.cover).empty(), "output does not cover every element");
  out.bound = st.unit_weight * Rational(static_cast<std::int64_t>(nu)) / pow(Rational(101, 100), st.tau - 1) +
              Rational(3 * static_cast<std::int64_t>(st.tau)) * st.opt_bound;
  ensure(Rational(static_cast<std::int64_t>(out.cost)) <= out.bound, "cover cost above the potential bound");
  out.metrics = engine.metrics();
  return out;
}

}  // namespace dlr
