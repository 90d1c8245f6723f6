#include "dlr/oracle.hpp"

#include <algorithm>
#include <bit>
#include <functional>

#include "dlr/errors.hpp"

namespace dlr {

namespace {

using Mask = std::uint64_t;

// Maximum weight independent set inside `cand` by branching on the lowest node.
void mwis(const std::vector<Mask>& closed_nb, const std::vector<std::uint64_t>& w, Mask cand, std::uint64_t acc,
          Mask chosen, std::uint64_t& best, Mask& best_set) {
  if (!cand) {
    if (acc > best || (acc == best && chosen < best_set)) {
      best = acc;
      best_set = chosen;
    }
    return;
  }
  std::uint64_t rest = 0;
  for (Mask m = cand; m; m &= m - 1) rest += w[std::countr_zero(m)];
  if (acc + rest < best) return;
  int v = std::countr_zero(cand);
  mwis(closed_nb, w, cand & ~closed_nb[v], acc + w[v], chosen | (Mask{1} << v), best, best_set);
  mwis(closed_nb, w, cand & ~(Mask{1} << v), acc, chosen, best, best_set);
}

}  // namespace

IsOptimum brute_max_weight_is(const WeightedGraph& wg, const OracleBudget& budget) {
  const Graph& g = wg.graph;
  if (g.size() > budget.max_nodes || g.size() > 63)
    throw OracleBudgetExceeded("independent set oracle limited to " + std::to_string(budget.max_nodes) + " nodes");
  std::vector<Mask> nb(g.size());
  for (Index v = 0; v < g.size(); ++v) {
    nb[v] = Mask{1} << v;
    for (Index u : g.neighbors(v)) nb[v] |= Mask{1} << u;
  }
  std::uint64_t best = 0;
  Mask best_set = 0;
  Mask all = g.size() ? (~Mask{0} >> (64 - g.size())) : 0;
  mwis(nb, wg.weight, all, 0, 0, best, best_set);
  IsOptimum out;
  out.weight = best;
  for (Mask m = best_set; m; m &= m - 1) out.witness.push_back(static_cast<Index>(std::countr_zero(m)));
  return out;
}

CoverOptimum brute_set_cover_opt(const SetCoverInstance& inst, const OracleBudget& budget) {
  if (inst.num_sets() > budget.max_nodes)
    throw OracleBudgetExceeded("set cover oracle limited to " + std::to_string(budget.max_nodes) + " sets");
  const Index nu = inst.num_elements();
  for (Index u = 0; u < nu; ++u) require(!inst.sets_of[u].empty(), "infeasible instance: element without a set");
  std::vector<int> covered(nu, 0);
  std::vector<Index> chosen, best_sets;
  std::uint64_t best = UINT64_MAX;
  std::function<void(std::uint64_t)> go = [&](std::uint64_t cost) {
    if (cost >= best) return;
    Index first = nu;
    for (Index u = 0; u < nu && first == nu; ++u)
      if (!covered[u]) first = u;
    if (first == nu) {
      best = cost;
      best_sets = chosen;
      return;
    }
    for (Index v : inst.sets_of[first]) {
      for (Index u : inst.elements_of[v]) ++covered[u];
      chosen.push_back(v);
      go(cost + inst.cost[v]);
      chosen.pop_back();
      for (Index u : inst.elements_of[v]) --covered[u];
    }
  };
  go(0);
  CoverOptimum out;
  out.cost = best;
  out.witness = best_sets;
  std::sort(out.witness.begin(), out.witness.end());
  return out;
}

Index neighborhood_independence(const Graph& g, const OracleBudget& budget) {
  if (g.max_degree() > budget.max_nodes || g.max_degree() > 63)
    throw OracleBudgetExceeded("neighbourhood independence oracle limited to degree " +
                               std::to_string(budget.max_nodes));
  Index beta = 0;
  for (Index v = 0; v < g.size(); ++v) {
    auto nb = g.neighbors(v);
    const std::size_t d = nb.size();
    std::vector<Mask> closed(d);
    for (std::size_t i = 0; i < d; ++i) {
      closed[i] = Mask{1} << i;
      for (std::size_t j = 0; j < d; ++j)
        if (i != j && g.adjacent(nb[i], nb[j])) closed[i] |= Mask{1} << j;
    }
    std::vector<std::uint64_t> ones(d, 1);
    std::uint64_t best = 0;
    Mask best_set = 0;
    mwis(closed, ones, d ? (~Mask{0} >> (64 - d)) : 0, 0, 0, best, best_set);
    beta = std::max<Index>(beta, static_cast<Index>(best));
  }
  return beta;
}

PackingOptimum packing_optimum(const Graph& g, const std::vector<Rational>& w, bool with_dual,
                               const OracleBudget& budget) {
  LinearProgram lp = packing_lp(g, w);
  LpSolution s = solve_exact(lp, budget);
  ensure(s.status == LpStatus::Optimal, "packing LP not optimal");
  PackingOptimum out{s.value, s.x, {}};
  if (with_dual) {
    LpSolution d = solve_exact(lp.dual(), budget);
    ensure(d.status == LpStatus::Optimal && d.value == s.value, "packing LP strong duality failed");
    out.y = d.x;
  }
  return out;
}

bool is_independent(const Graph& g, const std::vector<Index>& set) {
  std::vector<char> in(g.size(), 0);
  for (Index v : set) {
    if (v >= g.size() || in[v]) return false;
    in[v] = 1;
  }
  for (auto [a, b] : g.edges())
    if (in[a] && in[b]) return false;
  return true;
}

bool is_maximal_independent(const Graph& g, const std::vector<Index>& set) {
  if (!is_independent(g, set)) return false;
  std::vector<char> dom(g.size(), 0);
  for (Index v : set) {
    dom[v] = 1;
    for (Index u : g.neighbors(v)) dom[u] = 1;
  }
  return std::all_of(dom.begin(), dom.end(), [](char c) { return c != 0; });
}

bool is_matching(const Graph& g, const std::vector<std::pair<Index, Index>>& m) {
  std::vector<char> used(g.size(), 0);
  for (auto [a, b] : m) {
    if (a >= g.size() || b >= g.size() || !g.adjacent(a, b) || used[a] || used[b]) return false;
    used[a] = used[b] = 1;
  }
  return true;
}

bool is_maximal_matching(const Graph& g, const std::vector<std::pair<Index, Index>>& m) {
  if (!is_matching(g, m)) return false;
  std::vector<char> used(g.size(), 0);
  for (auto [a, b] : m) used[a] = used[b] = 1;
  for (auto [a, b] : g.edges())
    if (!used[a] && !used[b]) return false;
  return true;
}

std::vector<Index> uncovered_elements(const SetCoverInstance& inst, const std::vector<Index>& sets) {
  std::vector<char> cov(inst.num_elements(), 0);
  for (Index v : sets)
    if (v < inst.num_sets())
      for (Index u : inst.elements_of[v]) cov[u] = 1;
  std::vector<Index> out;
  for (Index u = 0; u < inst.num_elements(); ++u)
    if (!cov[u]) out.push_back(u);
  return out;
}

}  // namespace dlr
