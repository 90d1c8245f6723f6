#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "dlr/graph.hpp"
#include "dlr/rational.hpp"

namespace dlr {

struct OracleBudget {
  std::size_t max_nodes = 20;       // subset enumeration
  std::size_t max_lp_vars = 10000;  // exact simplex
};

// Variables are non-negative.
struct LinearProgram {
  enum class Sense { Maximize, Minimize };
  enum class Rel { Le, Ge, Eq };
  struct Row {
    std::vector<std::pair<std::size_t, Rational>> coeffs;
    Rel rel = Rel::Le;
    Rational rhs;
  };

  Sense sense = Sense::Maximize;
  std::size_t num_vars = 0;
  std::vector<Rational> objective;
  std::vector<Row> rows;

  // Dual program; its variables are the rows (equality rows split into two).
  LinearProgram dual() const;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Rational value;
  std::vector<Rational> x;
  std::size_t pivots = 0;
};

// Two-phase simplex over exact rationals (Dantzig pricing, Bland's rule after
// a run of degenerate pivots). Throws OracleBudgetExceeded beyond the budget.
LpSolution solve_exact(const LinearProgram& lp, const OracleBudget& budget = {});

// Checks feasibility of x and returns its objective value.
bool lp_feasible(const LinearProgram& lp, const std::vector<Rational>& x);
Rational lp_value(const LinearProgram& lp, const std::vector<Rational>& x);

// max sum w(v) x_v  s.t.  sum_{u in N+(v)} x_u <= 1.
LinearProgram packing_lp(const Graph& g, const std::vector<Rational>& w);
// min sum cost(v) x_v  s.t.  sum_{v in N(u)} x_v >= 1 for every element u.
LinearProgram covering_lp(const SetCoverInstance& inst);

// Fractional cover together with a feasible dual packing y that certifies
// sum cost x <= factor * sum y, hence sum cost x <= factor * OPT_frac.
struct FractionalCover {
  std::vector<Rational> x;  // per set, in [0, 1]
  std::vector<Rational> y;  // per element
  Rational value;           // sum cost x
  Rational dual_value;      // sum y, a lower bound on the fractional optimum
  Rational factor;          // declared factor, value <= factor * dual_value
  bool exact = false;
};

enum class CoverBackend { CentralExact, CentralApprox };

// CentralApprox runs a multiplicative-weights packing/covering solver in
// floating point and certifies the result exactly; its declared factor is 2.
FractionalCover fractional_cover(const SetCoverInstance& inst, CoverBackend backend,
                                 const OracleBudget& budget = {});

}  // namespace dlr
