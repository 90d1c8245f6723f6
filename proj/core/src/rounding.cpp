#include "dlr/rounding.hpp"

#include <algorithm>
#include <numeric>

#include "dlr/errors.hpp"

namespace dlr {

void EdgeTable::add(Label a, Label b, const Rational& v) {
  if (v.is_zero()) return;
  for (auto& e : entries)
    if (e.a == a && e.b == b) {
      e.value += v;
      return;
    }
  entries.push_back({a, b, v});
}

Valuation::Valuation(const Multigraph& h, std::size_t sigma_)
    : sigma(sigma_),
      edge_utility(h.num_edges()),
      edge_cost(h.num_edges()),
      node_utility(h.comm().size()),
      node_cost(h.comm().size()) {}

void Valuation::add_node_utility(Index v, Label a, const Rational& x) {
  if (node_utility[v].empty()) node_utility[v].assign(sigma, Rational());
  node_utility[v][a] += x;
}

void Valuation::add_node_cost(Index v, Label a, const Rational& x) {
  if (node_cost[v].empty()) node_cost[v].assign(sigma, Rational());
  node_cost[v][a] += x;
}

void Valuation::validate(const Multigraph& h) const {
  require(sigma >= 1 && sigma <= 65535, "label alphabet size out of range");
  require(edge_utility.size() == h.num_edges() && edge_cost.size() == h.num_edges(),
          "valuation needs one table per edge");
  require(node_utility.size() == h.comm().size() && node_cost.size() == h.comm().size(),
          "valuation needs one node table slot per node");
  for (const auto* tabs : {&edge_utility, &edge_cost})
    for (const auto& t : *tabs)
      for (const auto& e : t.entries)
        require(e.a < sigma && e.b < sigma && e.value.sign() >= 0, "edge table entry invalid or negative");
  for (const auto* tabs : {&node_utility, &node_cost})
    for (const auto& t : *tabs) {
      require(t.empty() || t.size() == sigma, "node table has the wrong size");
      for (const auto& x : t) require(x.sign() >= 0, "node table entry is negative");
    }
}

RoundingOptions RoundingOptions::for_model(Model m) {
  RoundingOptions o;
  if (m == Model::Congest) {
    o.estimate = EstimateMode::Quantized;
    o.aggregation = Aggregation::Factor2;
  }
  return o;
}

FractionalAssignment from_labeling(const Multigraph& h, const Labeling& l, std::size_t sigma) {
  FractionalAssignment lam(h.comm().size(), sigma);
  for (Index v : h.nodes()) {
    require(l[v] < sigma, "label out of range");
    lam.at(v, l[v]) = Rational(1);
  }
  lam.k = 0;
  return lam;
}

void validate_assignment(const Multigraph& h, const FractionalAssignment& lam) {
  require(lam.value.size() == static_cast<std::size_t>(h.comm().size()) * lam.sigma,
          "assignment has the wrong size");
  for (Index v : h.nodes()) {
    Rational s;
    for (std::size_t a = 0; a < lam.sigma; ++a) {
      require(lam.at(v, a).sign() >= 0, "negative fractional value");
      s += lam.at(v, a);
    }
    require(s == Rational(1), "fractional values of node " + std::to_string(h.comm().id(v)) + " do not sum to 1");
  }
}

long dyadic_level(const Multigraph& h, const FractionalAssignment& lam) {
  long k = 0;
  for (Index v : h.nodes())
    for (std::size_t a = 0; a < lam.sigma; ++a) {
      const Rational& x = lam.at(v, a);
      if (x.is_zero()) continue;
      mpz_class d = x.den();
      if (mpz_popcount(d.get_mpz_t()) != 1) return -1;
      k = std::max<long>(k, static_cast<long>(mpz_sizeinbase(d.get_mpz_t(), 2)) - 1);
    }
  return k;
}

Rational smallest_nonzero(const Multigraph& h, const FractionalAssignment& lam) {
  Rational best(1);
  for (Index v : h.nodes())
    for (std::size_t a = 0; a < lam.sigma; ++a)
      if (lam.at(v, a).sign() > 0 && lam.at(v, a) < best) best = lam.at(v, a);
  return best;
}

namespace {

Rational table_value(const EdgeTable& t, const FractionalAssignment& lam, Index a, Index b) {
  Rational s;
  for (const auto& e : t.entries) {
    const Rational& x = lam.at(a, e.a);
    if (x.is_zero()) continue;
    const Rational& y = lam.at(b, e.b);
    if (y.is_zero()) continue;
    s += x * y * e.value;
  }
  return s;
}

Rational node_value(const std::vector<Rational>& t, const FractionalAssignment& lam, Index v) {
  Rational s;
  for (std::size_t a = 0; a < t.size(); ++a)
    if (!t[a].is_zero() && !lam.at(v, a).is_zero()) s += lam.at(v, a) * t[a];
  return s;
}

}  // namespace

UtilityCost evaluate(const Multigraph& h, const Valuation& val, const FractionalAssignment& lam) {
  UtilityCost r;
  for (std::size_t i = 0; i < h.num_edges(); ++i) {
    const auto& e = h.edges()[i];
    r.utility += table_value(val.edge_utility[i], lam, e.a, e.b);
    r.cost += table_value(val.edge_cost[i], lam, e.a, e.b);
  }
  for (Index v : h.nodes()) {
    r.utility += node_value(val.node_utility[v], lam, v);
    r.cost += node_value(val.node_cost[v], lam, v);
  }
  return r;
}

UtilityCost evaluate(const Multigraph& h, const Valuation& val, const Labeling& l) {
  UtilityCost r;
  for (std::size_t i = 0; i < h.num_edges(); ++i) {
    const auto& e = h.edges()[i];
    for (const auto& t : val.edge_utility[i].entries)
      if (t.a == l[e.a] && t.b == l[e.b]) r.utility += t.value;
    for (const auto& t : val.edge_cost[i].entries)
      if (t.a == l[e.a] && t.b == l[e.b]) r.cost += t.value;
  }
  for (Index v : h.nodes()) {
    if (!val.node_utility[v].empty()) r.utility += val.node_utility[v][l[v]];
    if (!val.node_cost[v].empty()) r.cost += val.node_cost[v][l[v]];
  }
  return r;
}

namespace {

// Neighbour knowledge of fractional assignments, sigma values per slot.
struct LambdaCache {
  std::size_t sigma;
  const FractionalAssignment* own;
  std::vector<Rational> heard;

  LambdaCache(const Graph& g, const FractionalAssignment& lam)
      : sigma(lam.sigma), own(&lam), heard(static_cast<std::size_t>(g.num_slots()) * lam.sigma) {}

  const Rational* of(Index endpoint, Slot s) const {
    return s == kOwnSlot ? &own->value[endpoint * sigma] : &heard[static_cast<std::size_t>(s) * sigma];
  }

  void publish(Engine& engine, std::span<const Index> senders, std::uint64_t bits) {
    engine.broadcast(senders, [&](Index) { return bits; },
                     [&](Index from, Index, Slot slot) {
                       std::copy_n(own->value.begin() + from * sigma, sigma,
                                   heard.begin() + static_cast<std::size_t>(slot) * sigma);
                     });
  }
};

// Adds, per label x of the endpoint, sum_y lam_y(other) * table[x][y] (with
// the table oriented so the endpoint comes first).
void accumulate(const EdgeTable& t, bool endpoint_is_a, const Rational* other, const Rational& scale,
                std::vector<Rational>& acc) {
  for (const auto& e : t.entries) {
    Label mine = endpoint_is_a ? e.a : e.b;
    Label theirs = endpoint_is_a ? e.b : e.a;
    if (other[theirs].is_zero()) continue;
    acc[mine] += scale * other[theirs] * e.value;
  }
}

}  // namespace

namespace {

FractionalAssignment rounding_step_from(Engine& engine, const Multigraph& h, const Valuation& val,
                                        const FractionalAssignment& lam_in, const UtilityCost& before,
                                        const Rational& delta, const Rational& eta, const ProperColoring& initial,
                                        const RoundingOptions& opts, StepReport* report) {
  require(lam_in.k >= 1, "rounding step needs a 2^-k-integral assignment with k >= 1");
  require(delta.sign() > 0 && delta <= Rational(1), "delta must lie in (0, 1]");
  require(eta >= Rational(1), "eta must be at least 1");
  const std::uint64_t start_rounds = engine.metrics().rounds;
  const std::size_t sigma = lam_in.sigma;
  const long k = lam_in.k;
  const Rational half = Rational::pow2(-k);
  FractionalAssignment lam = lam_in;

  LambdaCache cache(h.comm(), lam);
  cache.publish(engine, h.nodes(), sigma * static_cast<std::uint64_t>(k + 1));

  EdgeWeights w(h.num_edges());
  for (std::size_t i = 0; i < h.num_edges(); ++i) {
    const auto& e = h.edges()[i];
    w[i] = table_value(val.edge_utility[i], lam, e.a, e.b) + eta * table_value(val.edge_cost[i], lam, e.a, e.b);
  }
  const Rational sixth = delta / Rational(6);
  DefectiveColoring col;
  if (opts.oracle_coloring) {
    col = greedy_defective_oracle(h, w, sixth);
    engine.metrics().oracle_assisted = true;
  } else {
    col = average_defective_coloring(engine, h, w, sixth, initial, opts.aggregation);
  }

  // Nodes with labels at odd multiples of 2^-k, grouped by color.
  std::vector<std::vector<Label>> odd(h.comm().size());
  std::vector<std::pair<std::uint64_t, Index>> by_color;
  for (Index v : h.nodes()) {
    for (std::size_t a = 0; a < sigma; ++a)
      if (!lam.at(v, a).is_multiple_of_pow2(k - 1)) odd[v].push_back(static_cast<Label>(a));
    ensure(odd[v].size() % 2 == 0, "odd number of odd labels");
    if (!odd[v].empty()) by_color.emplace_back(col.color[v], v);
  }
  std::sort(by_color.begin(), by_color.end());

  const auto& lay = h.layout();
  std::vector<std::vector<Rational>> phi(h.comm().size()), theta(h.comm().size());
  std::uint64_t prev = 0;
  bool first = true;
  for (std::size_t i = 0; i < by_color.size();) {
    std::size_t j = i;
    std::vector<Index> cls;
    while (j < by_color.size() && by_color[j].first == by_color[i].first) cls.push_back(by_color[j++].second);
    const std::uint64_t gamma = by_color[i].first;
    engine.idle(2 * (first ? gamma : gamma - prev - 1));
    first = false;
    prev = gamma;
    i = j;

    for (Index v : cls) {
      phi[v].assign(sigma, Rational());
      theta[v].assign(sigma, Rational());
    }
    // Each value: per odd label of the endpoint, phi (and theta when needed).
    gather_from_handlers<std::vector<Rational>>(
        engine, h, cls,
        [&](const HandlerGroup& gr) {
          std::vector<Rational> u_acc(sigma), c_acc(sigma);
          for (std::uint32_t t = gr.begin; t < gr.end; ++t) {
            const auto& he = lay.handled[t];
            const auto& e = h.edges()[he.edge];
            if (col.color[e.a] == col.color[e.b]) continue;
            const Rational* other = cache.of(gr.endpoint, he.other_slot);
            accumulate(val.edge_utility[he.edge], he.endpoint_is_a, other, Rational(1), u_acc);
            accumulate(val.edge_cost[he.edge], he.endpoint_is_a, other, Rational(1), c_acc);
          }
          const auto& labels = odd[gr.endpoint];
          const bool local = gr.handler == gr.endpoint;
          std::vector<Rational> out;
          out.reserve(labels.size() * 2);
          for (Label a : labels) {
            Rational ph = u_acc[a] - eta * c_acc[a];
            Rational th = u_acc[a] + eta * c_acc[a];
            if (opts.estimate == EstimateMode::Quantized && !local) {
              Rational g = sixth * th;
              ph = g.sign() > 0 ? ph.floor_to(g.floor_pow2()) : Rational();
            }
            out.push_back(ph);
            if (opts.estimate == EstimateMode::Adversarial || local) out.push_back(th);
          }
          return out;
        },
        [](const std::vector<Rational>& vals) {
          std::uint64_t b = 0;
          for (const auto& x : vals) b += bits_of(x);
          return std::max<std::uint64_t>(b, 1);
        },
        [&](Index v, std::vector<Rational>&& vals) {
          const auto& labels = odd[v];
          const bool pairs = vals.size() == 2 * labels.size();
          for (std::size_t t = 0; t < labels.size(); ++t) {
            phi[v][labels[t]] += vals[pairs ? 2 * t : t];
            if (pairs) theta[v][labels[t]] += vals[2 * t + 1];
          }
        });

    for (Index v : cls) {
      const auto& labels = odd[v];
      std::vector<Rational> est(sigma);
      std::vector<Rational> exact_phi(sigma), exact_theta(sigma);
      for (Label a : labels) {
        Rational nu = val.node_utility[v].empty() ? Rational() : val.node_utility[v][a];
        Rational nc = val.node_cost[v].empty() ? Rational() : val.node_cost[v][a];
        exact_phi[a] = phi[v][a] + nu - eta * nc;
        exact_theta[a] = theta[v][a] + nu + eta * nc;
        est[a] = exact_phi[a];
      }
      std::vector<Label> order(labels);
      auto by_est = [&](Label x, Label y) { return est[x] != est[y] ? est[x] > est[y] : x < y; };
      if (opts.estimate == EstimateMode::Adversarial) {
        // Push the truly best half down to the bottom of the tolerated band.
        std::sort(order.begin(), order.end(), by_est);
        for (std::size_t t = 0; t < order.size() / 2; ++t) est[order[t]] -= sixth * exact_theta[order[t]];
        order = labels;
      }
      std::sort(order.begin(), order.end(), by_est);
      for (std::size_t t = 0; t < order.size(); ++t) {
        if (t < order.size() / 2)
          lam.at(v, order[t]) += half;
        else
          lam.at(v, order[t]) -= half;
      }
    }
    cache.publish(engine, cls, 2 * sigma);
  }
  if (col.palette > 0) {
    std::uint64_t done = first ? 0 : prev + 1;
    if (col.palette > done) engine.idle(2 * (col.palette - done));
  }

  lam.k = k - 1;
  const UtilityCost after = evaluate(h, val, lam);
  ensure(after.utility - eta * after.cost >=
             before.utility - eta * before.cost - delta * (before.utility + eta * before.cost),
         "rounding step lost more than delta of the potential");
  for (Index v : h.nodes())
    for (std::size_t a = 0; a < sigma; ++a)
      ensure(lam.at(v, a).is_multiple_of_pow2(k - 1), "rounding step did not double integrality");
  if (report) {
    report->before = before;
    report->after = after;
    report->palette = col.palette;
    report->rounds = engine.metrics().rounds - start_rounds;
  }
  return lam;
}

}  // namespace

FractionalAssignment rounding_step(Engine& engine, const Multigraph& h, const Valuation& val,
                                   const FractionalAssignment& lam, const Rational& delta, const Rational& eta,
                                   const ProperColoring& initial, const RoundingOptions& opts, StepReport* report) {
  return rounding_step_from(engine, h, val, lam, evaluate(h, val, lam), delta, eta, initial, opts, report);
}

namespace {
Labeling to_labeling(const Multigraph& h, const FractionalAssignment& lam) {
  Labeling l(h.comm().size(), 0);
  for (Index v : h.nodes()) {
    bool found = false;
    for (std::size_t a = 0; a < lam.sigma; ++a)
      if (lam.at(v, a) == Rational(1)) {
        l[v] = static_cast<Label>(a);
        found = true;
      }
    ensure(found, "assignment is not integral");
  }
  return l;
}

void require_eps_mu(const Rational& eps, const Rational& mu) {
  require(eps.sign() > 0 && eps <= Rational(1), "eps must lie in (0, 1]");
  require(mu.sign() > 0 && mu <= Rational(1), "mu must lie in (0, 1]");
}
}  // namespace

Labeling round_to_integral(Engine& engine, const Multigraph& h, const Valuation& val,
                           const FractionalAssignment& lam_in, const Rational& eps, const Rational& mu,
                           const RoundingOptions& opts, RoundingReport* report) {
  require_eps_mu(eps, mu);
  val.validate(h);
  validate_assignment(h, lam_in);
  FractionalAssignment lam = lam_in;
  long level = dyadic_level(h, lam);
  require(level >= 0, "assignment is not dyadic");
  if (lam.k < level) lam.k = level;
  const long k = lam.k;
  const UtilityCost before = evaluate(h, val, lam);
  require(before.gain() >= mu * before.utility, "precondition u - c >= mu u does not hold");
  if (report) {
    report->k = k;
    report->before = before;
  }
  if (k == 0) {
    if (report) report->after = before;
    return to_labeling(h, lam);
  }

  const Rational delta = eps * mu / Rational(6 * k);
  ProperColoring computed;
  const ProperColoring* initial = opts.initial;
  if (!initial) {
    computed = engine.congest() ? id_coloring(h) : linial_coloring(engine, h);
    initial = &computed;
  }
  auto eta_at = [&](long i) { return Rational(1) + (Rational(1) - Rational(i, k)) * eps * mu / Rational(2); };

  const Rational phi0 = before.utility - eta_at(0) * before.cost;
  ensure(phi0 >= (Rational(1) - eps / Rational(2)) * before.gain(), "initial potential below (1 - eps/2)(u - c)");
  engine.record_potential(phi0);
  if (report) {
    report->delta = delta;
    report->potential = {phi0};
  }
  Rational factor(1);
  UtilityCost current = before;
  for (long i = 1; i <= k; ++i) {
    const Rational eta = eta_at(i);
    StepReport sr;
    lam = rounding_step_from(engine, h, val, lam, current, delta, eta, *initial, opts, &sr);
    current = sr.after;
    factor *= Rational(1) - delta;
    const Rational phi = sr.after.utility - eta * sr.after.cost;
    ensure(phi >= factor * phi0, "potential fell below (1 - delta)^i Phi_0");
    engine.record_potential(phi);
    if (report) {
      report->potential.push_back(phi);
      report->steps.push_back(sr);
    }
  }
  Labeling out = to_labeling(h, lam);
  const UtilityCost after = evaluate(h, val, out);
  ensure(after.gain() >= (Rational(1) - eps) * before.gain(), "rounding lost more than eps of u - c");
  if (report) report->after = after;
  return out;
}

FractionalAssignment preprocess_fractional(const Multigraph& h, const Valuation& val,
                                           const FractionalAssignment& lam, const Rational& lambda_min,
                                           const Rational& eps, const Rational& mu, PreprocessReport* report) {
  require_eps_mu(eps, mu);
  require(lambda_min.sign() > 0, "lambda_min must be positive");
  val.validate(h);
  validate_assignment(h, lam);
  for (Index v : h.nodes())
    for (std::size_t a = 0; a < lam.sigma; ++a)
      require(lam.at(v, a).is_zero() || lam.at(v, a) >= lambda_min, "a non-zero value is below lambda_min");
  const UtilityCost before = evaluate(h, val, lam);
  require(before.gain() >= mu * before.utility, "precondition u - c >= mu u does not hold");

  const Rational target = Rational(9) / (eps * mu * lambda_min);
  long k = std::max<long>(0, target.floor_log2());
  if (Rational::pow2(k) < target) ++k;
  const Rational scale = Rational::pow2(k);
  const Rational unit = Rational::pow2(-k);

  FractionalAssignment out = lam;
  out.k = k;
  const std::size_t sigma = lam.sigma;
  std::vector<mpz_class> fl(sigma);
  std::vector<Rational> rem(sigma);
  std::vector<std::size_t> order(sigma);
  for (Index v : h.nodes()) {
    mpz_class total = 0;
    for (std::size_t a = 0; a < sigma; ++a) {
      Rational x = lam.at(v, a) * scale;
      fl[a] = x.floor();
      rem[a] = x - Rational(fl[a]);
      total += fl[a];
    }
    mpz_class deficit = scale.num() - total;
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return rem[x] > rem[y]; });
    for (std::size_t t = 0; t < sigma && deficit > 0; ++t) {
      ensure(rem[order[t]].sign() > 0, "no remainder left to absorb the deficit");
      fl[order[t]] += 1;
      deficit -= 1;
    }
    for (std::size_t a = 0; a < sigma; ++a) out.at(v, a) = Rational(fl[a]) * unit;
  }
  validate_assignment(h, out);
  const UtilityCost after = evaluate(h, val, out);
  ensure(after.gain() >= (Rational(1) - eps) * before.gain(), "preprocessing lost more than eps of u - c");
  ensure(after.gain() >= mu / Rational(2) * after.utility, "preprocessing broke u - c >= (mu/2) u");
  if (report) {
    report->k = k;
    report->before = before;
    report->after = after;
  }
  return out;
}

Labeling round_fractional(Engine& engine, const Multigraph& h, const Valuation& val,
                          const FractionalAssignment& lam, const Rational& lambda_min, const Rational& eps,
                          const Rational& mu, const RoundingOptions& opts, RoundingReport* report,
                          PreprocessReport* pre) {
  const Rational half = eps / Rational(2);
  PreprocessReport local_pre;
  FractionalAssignment dy = preprocess_fractional(h, val, lam, lambda_min, half, mu, &local_pre);
  Labeling out = round_to_integral(engine, h, val, dy, half, mu / Rational(2), opts, report);
  const UtilityCost after = evaluate(h, val, out);
  ensure(after.gain() >= (Rational(1) - eps) * local_pre.before.gain(), "rounding lost more than eps of u - c");
  if (pre) *pre = local_pre;
  return out;
}

Lifted lift_node_valuation(const Multigraph& h, const Valuation& val, const FractionalAssignment& lam) {
  const Graph& g = h.comm();
  const Index n = g.size();
  std::vector<Index> owners;
  for (Index v : h.nodes())
    if (!val.node_utility[v].empty() || !val.node_cost[v].empty()) owners.push_back(v);
  NodeId base = n ? g.ids().back() + 1 : 0;
  std::vector<NodeId> ids(g.ids());
  for (std::size_t i = 0; i < owners.size(); ++i) ids.push_back(base + i);
  auto edges = g.edges();
  for (std::size_t i = 0; i < owners.size(); ++i) edges.emplace_back(owners[i], n + static_cast<Index>(i));
  auto comm = std::make_shared<const Graph>(Graph::from_indices(std::move(ids), edges));

  std::vector<Index> nodes(h.nodes());
  std::vector<HEdge> hedges(h.edges());
  for (std::size_t i = 0; i < owners.size(); ++i) {
    Index d = n + static_cast<Index>(i);
    nodes.push_back(d);
    hedges.push_back({owners[i], d, EdgeKind::Physical, owners[i]});
  }
  Lifted out;
  out.h = Multigraph(comm, nodes, hedges);
  out.comm = comm;
  out.val = Valuation(out.h, val.sigma);
  for (std::size_t i = 0; i < h.num_edges(); ++i) {
    out.val.edge_utility[i] = val.edge_utility[i];
    out.val.edge_cost[i] = val.edge_cost[i];
  }
  for (std::size_t i = 0; i < owners.size(); ++i) {
    Index v = owners[i];
    std::size_t e = h.num_edges() + i;
    for (std::size_t a = 0; a < val.sigma; ++a) {
      if (!val.node_utility[v].empty()) out.val.edge_utility[e].add(static_cast<Label>(a), 0, val.node_utility[v][a]);
      if (!val.node_cost[v].empty()) out.val.edge_cost[e].add(static_cast<Label>(a), 0, val.node_cost[v][a]);
    }
  }
  out.lam = FractionalAssignment(comm->size(), lam.sigma);
  for (Index v : h.nodes())
    for (std::size_t a = 0; a < lam.sigma; ++a) out.lam.at(v, a) = lam.at(v, a);
  for (std::size_t i = 0; i < owners.size(); ++i) out.lam.at(n + static_cast<Index>(i), 0) = Rational(1);
  out.lam.k = lam.k;
  return out;
}

}  // namespace dlr
