#pragma once

#include <memory>
#include <vector>

#include "deltaef/rational.hpp"

namespace deltaef {

enum class RowSense { eq, le, ge };

struct LpRow {
  std::vector<std::pair<int, Rat>> terms;  // (variable, coefficient), variable indices strictly increasing
  RowSense sense = RowSense::eq;
  Rat rhs = Rat(0);
};

// Variables are free unless marked nonneg. Bounds other than x >= 0 are rows.
struct LpModel {
  int num_vars = 0;
  std::vector<bool> nonneg;  // empty means all free
  std::vector<LpRow> rows;
};

enum class LpStatus { optimal, unbounded, infeasible };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  Rat value = Rat(0);     // objective at the optimum
  RatVector point;        // optimal point in model variables
  RatVector ray;          // recession direction when unbounded
};

// Exact revised simplex over the rationals: Markowitz-ordered sparse LU with
// product-form updates, Dantzig pricing with a Bland fallback for stalls, and
// deterministic index tie-breaking throughout. A context presolves the model
// once (free-variable elimination through equalities, sign-row folding) and
// then serves warm-started solves: repeated minimize() calls reuse the last
// basis, and feasibility re-solves under new right-hand sides for designated
// parametric rows run as dual-simplex repairs.
class LpContext {
 public:
  explicit LpContext(const LpModel& model, std::vector<int> parametric_rows = {});
  ~LpContext();
  LpContext(LpContext&&) noexcept;
  LpContext& operator=(LpContext&&) noexcept;

  LpResult minimize(const RatVector& objective);
  LpResult maximize(const RatVector& objective);

  // Replaces the right-hand side of the parametric rows (in the order given at
  // construction) and re-solves the zero objective: a pure feasibility check.
  LpResult feasible_with_rhs(const RatVector& values);

  // Feasibility under the construction-time right-hand side.
  LpResult feasible();

  long pivot_count() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// One-shot exact solve.
LpResult lp_exact(const LpModel& model, const RatVector& objective, bool maximize = false);

}  // namespace deltaef
