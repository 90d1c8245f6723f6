#include "dlr/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dlr/errors.hpp"

namespace dlr {

LinearProgram LinearProgram::dual() const {
  // Rows normalised to a.x <= b (maximisation) or a.x >= b (minimisation),
  // each with a non-negative dual variable.
  const bool max = sense == Sense::Maximize;
  const Rel keep = max ? Rel::Le : Rel::Ge;
  struct NRow {
    const Row* row;
    bool negate;
  };
  std::vector<NRow> norm;
  for (const auto& r : rows) {
    if (r.rel == keep || r.rel == Rel::Eq) norm.push_back({&r, false});
    if (r.rel != keep) norm.push_back({&r, true});
  }
  LinearProgram d;
  d.sense = max ? Sense::Minimize : Sense::Maximize;
  d.num_vars = norm.size();
  d.objective.resize(norm.size());
  d.rows.resize(num_vars);
  for (std::size_t j = 0; j < num_vars; ++j) {
    d.rows[j].rel = max ? Rel::Ge : Rel::Le;
    d.rows[j].rhs = j < objective.size() ? objective[j] : Rational();
  }
  for (std::size_t i = 0; i < norm.size(); ++i) {
    const Rational sign(norm[i].negate ? -1 : 1);
    d.objective[i] = sign * norm[i].row->rhs;
    for (const auto& [j, a] : norm[i].row->coeffs) d.rows[j].coeffs.emplace_back(i, sign * a);
  }
  return d;
}

namespace {

class Tableau {
 public:
  Tableau(std::size_t m, std::size_t cols) : cols_(cols), t_(m + 1, std::vector<Rational>(cols + 1)), basis_(m) {}

  Rational& at(std::size_t i, std::size_t j) { return t_[i][j]; }
  Rational& rhs(std::size_t i) { return t_[i][cols_]; }
  std::vector<Rational>& obj() { return t_.back(); }
  std::size_t rows() const { return basis_.size(); }
  std::vector<std::size_t>& basis() { return basis_; }
  std::size_t pivots() const { return pivots_; }

  void pivot(std::size_t r, std::size_t c) {
    ++pivots_;
    auto& pr = t_[r];
    nz_.clear();
    for (std::size_t j = 0; j <= cols_; ++j)
      if (!pr[j].is_zero()) nz_.push_back(j);
    const Rational inv = pr[c].inverse();
    for (std::size_t j : nz_) pr[j] *= inv;
    for (std::size_t i = 0; i < t_.size(); ++i) {
      if (i == r || t_[i][c].is_zero()) continue;
      const Rational f = t_[i][c];
      auto& row = t_[i];
      for (std::size_t j : nz_) row[j] -= f * pr[j];
    }
    basis_[r] = c;
  }

  // Maximises with the objective row holding reduced costs (entering when
  // negative). Columns with allowed[j] == 0 never enter. Returns false when
  // unbounded.
  bool optimise(const std::vector<char>& allowed) {
    std::size_t degenerate = 0;
    for (;;) {
      const bool bland = degenerate >= 50;
      std::size_t enter = cols_;
      auto& z = obj();
      for (std::size_t j = 0; j < cols_; ++j) {
        if (!allowed[j] || z[j].sign() >= 0) continue;
        if (enter == cols_ || (!bland && z[j] < z[enter])) enter = j;
        if (bland) break;
      }
      if (enter == cols_) return true;
      std::size_t leave = rows();
      Rational best;
      for (std::size_t i = 0; i < rows(); ++i) {
        const Rational& a = t_[i][enter];
        if (a.sign() <= 0) continue;
        Rational ratio = rhs(i) / a;
        if (leave == rows() || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == rows()) return false;
      degenerate = best.is_zero() ? degenerate + 1 : 0;
      pivot(leave, enter);
    }
  }

  void drop_row(std::size_t r) {
    t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(r));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
  }

 private:
  std::size_t cols_;
  std::vector<std::vector<Rational>> t_;  // last row: objective
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> nz_;
  std::size_t pivots_ = 0;
};

}  // namespace

LpSolution solve_exact(const LinearProgram& lp, const OracleBudget& budget) {
  if (lp.num_vars > budget.max_lp_vars)
    throw OracleBudgetExceeded("LP has " + std::to_string(lp.num_vars) + " variables, budget is " +
                               std::to_string(budget.max_lp_vars));
  require(lp.objective.size() <= lp.num_vars, "objective longer than the variable count");
  const std::size_t n = lp.num_vars, m = lp.rows.size();
  const bool minimise = lp.sense == LinearProgram::Sense::Minimize;

  // Rows with non-negative right-hand sides.
  struct NRow {
    const LinearProgram::Row* row;
    Rational sign;
    LinearProgram::Rel rel;
  };
  std::vector<NRow> norm;
  std::size_t slacks = 0, artificials = 0;
  for (const auto& r : lp.rows) {
    for (const auto& [j, a] : r.coeffs) require(j < n, "LP coefficient refers to an unknown variable");
    NRow nr{&r, Rational(1), r.rel};
    if (r.rhs.sign() < 0) {
      nr.sign = Rational(-1);
      if (r.rel != LinearProgram::Rel::Eq)
        nr.rel = r.rel == LinearProgram::Rel::Le ? LinearProgram::Rel::Ge : LinearProgram::Rel::Le;
    }
    if (nr.rel != LinearProgram::Rel::Eq) ++slacks;
    if (nr.rel != LinearProgram::Rel::Le) ++artificials;
    norm.push_back(nr);
  }
  const std::size_t cols = n + slacks + artificials;
  Tableau tab(m, cols);
  std::vector<char> is_art(cols, 0);
  std::size_t s = n, a = n + slacks;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& nr = norm[i];
    for (const auto& [j, c] : nr.row->coeffs) tab.at(i, j) += nr.sign * c;
    tab.rhs(i) = nr.sign * nr.row->rhs;
    if (nr.rel == LinearProgram::Rel::Le) {
      tab.at(i, s) = Rational(1);
      tab.basis()[i] = s++;
    } else {
      if (nr.rel == LinearProgram::Rel::Ge) tab.at(i, s++) = Rational(-1);
      tab.at(i, a) = Rational(1);
      is_art[a] = 1;
      tab.basis()[i] = a++;
    }
  }

  LpSolution sol;
  std::vector<char> allowed(cols, 1);
  if (artificials) {
    // Phase 1: maximise -sum of artificials.
    auto& z = tab.obj();
    for (std::size_t i = 0; i < m; ++i)
      if (is_art[tab.basis()[i]])
        for (std::size_t j = 0; j <= cols; ++j)
          if (j == cols || !is_art[j]) z[j] -= tab.at(i, j);
    tab.optimise(allowed);
    if (tab.obj()[cols].sign() != 0) {
      sol.status = LpStatus::Infeasible;
      sol.pivots = tab.pivots();
      return sol;
    }
    // Drive zero-level artificials out of the basis; drop redundant rows.
    for (std::size_t i = tab.rows(); i-- > 0;) {
      if (!is_art[tab.basis()[i]]) continue;
      std::size_t c = cols;
      for (std::size_t j = 0; j < cols && c == cols; ++j)
        if (!is_art[j] && !tab.at(i, j).is_zero()) c = j;
      if (c == cols)
        tab.drop_row(i);
      else
        tab.pivot(i, c);
    }
    for (std::size_t j = 0; j < cols; ++j)
      if (is_art[j]) allowed[j] = 0;
  }

  // Phase 2 reduced costs for maximising c (or -c when minimising).
  std::vector<Rational> c(cols);
  for (std::size_t j = 0; j < lp.objective.size(); ++j) c[j] = minimise ? -lp.objective[j] : lp.objective[j];
  auto& z = tab.obj();
  for (std::size_t j = 0; j <= cols; ++j) z[j] = j < cols ? -c[j] : Rational();
  for (std::size_t i = 0; i < tab.rows(); ++i) {
    const Rational& cb = c[tab.basis()[i]];
    if (cb.is_zero()) continue;
    for (std::size_t j = 0; j <= cols; ++j)
      if (!tab.at(i, j).is_zero()) z[j] += cb * tab.at(i, j);
  }
  if (!tab.optimise(allowed)) {
    sol.status = LpStatus::Unbounded;
    sol.pivots = tab.pivots();
    return sol;
  }
  sol.status = LpStatus::Optimal;
  sol.x.assign(n, Rational());
  for (std::size_t i = 0; i < tab.rows(); ++i)
    if (tab.basis()[i] < n) sol.x[tab.basis()[i]] = tab.rhs(i);
  sol.value = lp_value(lp, sol.x);
  sol.pivots = tab.pivots();
  ensure(lp_feasible(lp, sol.x), "simplex returned an infeasible point");
  ensure(sol.value == (minimise ? -tab.obj()[cols] : tab.obj()[cols]), "simplex objective mismatch");
  return sol;
}

bool lp_feasible(const LinearProgram& lp, const std::vector<Rational>& x) {
  if (x.size() != lp.num_vars) return false;
  for (const auto& v : x)
    if (v.sign() < 0) return false;
  for (const auto& r : lp.rows) {
    Rational s;
    for (const auto& [j, a] : r.coeffs) s += a * x[j];
    if ((r.rel == LinearProgram::Rel::Le && s > r.rhs) || (r.rel == LinearProgram::Rel::Ge && s < r.rhs) ||
        (r.rel == LinearProgram::Rel::Eq && s != r.rhs))
      return false;
  }
  return true;
}

Rational lp_value(const LinearProgram& lp, const std::vector<Rational>& x) {
  Rational s;
  for (std::size_t j = 0; j < lp.objective.size(); ++j)
    if (!lp.objective[j].is_zero()) s += lp.objective[j] * x[j];
  return s;
}

LinearProgram packing_lp(const Graph& g, const std::vector<Rational>& w) {
  require(w.size() == g.size(), "one weight per node required");
  LinearProgram lp;
  lp.num_vars = g.size();
  lp.objective = w;
  lp.rows.resize(g.size());
  for (Index v = 0; v < g.size(); ++v) {
    auto& r = lp.rows[v];
    r.rhs = Rational(1);
    r.coeffs.emplace_back(v, Rational(1));
    for (Index u : g.neighbors(v)) r.coeffs.emplace_back(u, Rational(1));
    std::sort(r.coeffs.begin(), r.coeffs.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  }
  return lp;
}

LinearProgram covering_lp(const SetCoverInstance& inst) {
  LinearProgram lp;
  lp.sense = LinearProgram::Sense::Minimize;
  lp.num_vars = inst.num_sets();
  for (Index v = 0; v < inst.num_sets(); ++v) lp.objective.emplace_back(inst.cost[v]);
  for (Index u = 0; u < inst.num_elements(); ++u) {
    LinearProgram::Row r;
    r.rel = LinearProgram::Rel::Ge;
    r.rhs = Rational(1);
    for (Index v : inst.sets_of[u]) r.coeffs.emplace_back(v, Rational(1));
    lp.rows.push_back(std::move(r));
  }
  return lp;
}

namespace {

constexpr int kGridBits = 40;

Rational snap(double x, bool up) {
  double scaled = std::ldexp(x, kGridBits);
  scaled = up ? std::ceil(scaled) : std::floor(scaled);
  return Rational(static_cast<std::int64_t>(scaled)) * Rational::pow2(-kGridBits);
}

// Exactly feasible cover and packing from floating-point candidates.
void certify(const SetCoverInstance& inst, const std::vector<double>& xd, const std::vector<double>& yd,
             FractionalCover& out) {
  const Index nv = inst.num_sets(), nu = inst.num_elements();
  double xmax = *std::max_element(xd.begin(), xd.end());
  out.x.assign(nv, Rational());
  for (Index v = 0; v < nv; ++v) out.x[v] = snap(xd[v] / xmax, true);
  Rational cov_min;
  for (Index u = 0; u < nu; ++u) {
    Rational c;
    for (Index v : inst.sets_of[u]) c += out.x[v];
    if (u == 0 || c < cov_min) cov_min = c;
  }
  for (auto& x : out.x) x = min(Rational(1), x / cov_min);

  double ymax = *std::max_element(yd.begin(), yd.end());
  out.y.assign(nu, Rational());
  for (Index u = 0; u < nu; ++u) out.y[u] = snap(yd[u] / ymax, false);
  Rational load_max;
  for (Index v = 0; v < nv; ++v) {
    Rational l;
    for (Index u : inst.elements_of[v]) l += out.y[u];
    l /= Rational(inst.cost[v]);
    if (l > load_max) load_max = l;
  }
  for (auto& y : out.y) y /= load_max;

  out.value = Rational();
  for (Index v = 0; v < nv; ++v) out.value += Rational(inst.cost[v]) * out.x[v];
  out.dual_value = Rational();
  for (const auto& y : out.y) out.dual_value += y;
}

// Phase-based multiplicative weights for max sum y s.t. load(S) <= cost(S);
// the lengths of the sets yield the covering candidate.
void multiplicative_weights(const SetCoverInstance& inst, double eps, std::vector<double>& xbest,
                            std::vector<double>& y) {
  const Index nv = inst.num_sets(), nu = inst.num_elements();
  const double m = static_cast<double>(nv);
  const double delta = (1 + eps) * std::pow((1 + eps) * m, -1 / eps);
  std::vector<double> len(nv);
  for (Index v = 0; v < nv; ++v) len[v] = delta / static_cast<double>(inst.cost[v]);
  y.assign(nu, 0.0);
  auto column = [&](Index u) {
    double s = 0;
    for (Index v : inst.sets_of[u]) s += len[v];
    return s;
  };
  auto dual_obj = [&] {
    double s = 0;
    for (Index v = 0; v < nv; ++v) s += static_cast<double>(inst.cost[v]) * len[v];
    return s;
  };
  double best_ratio = std::numeric_limits<double>::infinity();
  double alpha = std::numeric_limits<double>::infinity();
  for (Index u = 0; u < nu; ++u) alpha = std::min(alpha, column(u));
  double d = dual_obj();
  while (d < 1) {
    double amin = std::numeric_limits<double>::infinity();
    for (Index u = 0; u < nu; ++u) amin = std::min(amin, column(u));
    if (d / amin < best_ratio) {
      best_ratio = d / amin;
      xbest = len;
    }
    alpha = std::max(alpha, amin) * (1 + eps);
    for (Index u = 0; u < nu && d < 1; ++u) {
      double col = column(u);
      while (col < alpha && d < 1) {
        double cap = std::numeric_limits<double>::infinity();
        for (Index v : inst.sets_of[u]) cap = std::min(cap, static_cast<double>(inst.cost[v]));
        y[u] += cap;
        for (Index v : inst.sets_of[u]) {
          double before = len[v];
          len[v] *= 1 + eps * cap / static_cast<double>(inst.cost[v]);
          d += static_cast<double>(inst.cost[v]) * (len[v] - before);
        }
        col = column(u);
      }
    }
  }
  double amin = std::numeric_limits<double>::infinity();
  for (Index u = 0; u < nu; ++u) amin = std::min(amin, column(u));
  if (d / amin < best_ratio) xbest = len;
}

}  // namespace

FractionalCover fractional_cover(const SetCoverInstance& inst, CoverBackend backend, const OracleBudget& budget) {
  require(inst.num_elements() > 0, "instance has no elements");
  FractionalCover out;
  if (backend == CoverBackend::CentralExact) {
    LinearProgram lp = covering_lp(inst);
    LpSolution primal = solve_exact(lp, budget);
    ensure(primal.status == LpStatus::Optimal, "covering LP not solved to optimality");
    LpSolution dual = solve_exact(lp.dual(), budget);
    ensure(dual.status == LpStatus::Optimal && dual.value == primal.value, "strong duality failed");
    out.x = primal.x;
    for (auto& x : out.x) x = min(Rational(1), x);
    out.y = dual.x;
    out.value = primal.value;
    out.dual_value = dual.value;
    out.factor = Rational(1);
    out.exact = true;
    return out;
  }
  out.factor = Rational(2);
  for (double eps : {0.1, 0.05, 0.02}) {
    std::vector<double> xd, yd;
    multiplicative_weights(inst, eps, xd, yd);
    certify(inst, xd, yd, out);
    if (out.value <= out.factor * out.dual_value) return out;
  }
  ensure(false, "approximate cover could not be certified within factor 2");
  return out;
}

}  // namespace dlr
