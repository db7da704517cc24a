#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "deltaef/linalg.hpp"
#include "deltaef/simplex.hpp"
#include "test_util.hpp"

using namespace deltaef;
using namespace deltaef::testutil;

namespace {

LpRow row(std::vector<std::pair<int, Rat>> terms, RowSense sense, Rat rhs) {
  LpRow r;
  r.terms = std::move(terms);
  r.sense = sense;
  r.rhs = std::move(rhs);
  return r;
}

Rat dot(const RatVector& a, const RatVector& b) {
  Rat acc(0);
  for (Eigen::Index i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

// Residual of a row at a point: lhs - rhs.
Rat residual(const LpRow& r, const RatVector& x) {
  Rat acc(-r.rhs);
  for (const auto& [v, c] : r.terms) acc += c * x[v];
  return acc;
}

bool satisfies(const LpModel& model, const RatVector& x) {
  for (int v = 0; v < model.num_vars; ++v)
    if (!model.nonneg.empty() && model.nonneg[v] && x[v] < 0) return false;
  for (const auto& r : model.rows) {
    const Rat res = residual(r, x);
    if (r.sense == RowSense::eq && res != 0) return false;
    if (r.sense == RowSense::le && res > 0) return false;
    if (r.sense == RowSense::ge && res < 0) return false;
  }
  return true;
}

// Brute-force LP maximum over a bounded polytope given by integer le/ge rows
// on free variables: enumerate all row subsets of size n, solve the square
// systems, keep feasible intersection points, return the best value.
Rat vertex_oracle_max(const LpModel& model, const RatVector& c) {
  const int n = model.num_vars;
  const int m = static_cast<int>(model.rows.size());
  bool found = false;
  Rat best(0);
  std::vector<int> comb(n);
  for (int i = 0; i < n; ++i) comb[i] = i;
  while (true) {
    IntMatrix M = IntMatrix::Zero(n, n);
    IntVector rhs(n);
    for (int i = 0; i < n; ++i) {
      for (const auto& [v, coef] : model.rows[comb[i]].terms) M(i, v) = to_int(coef);
      rhs[i] = to_int(model.rows[comb[i]].rhs);
    }
    if (det_exact(M) != 0) {
      const auto x = solve_exact(M, rhs);
      REQUIRE(x.has_value());
      if (satisfies(model, *x)) {
        const Rat val = dot(c, *x);
        if (!found || val > best) {
          best = val;
          found = true;
        }
      }
    }
    int k = n - 1;
    while (k >= 0 && comb[k] == m - n + k) --k;
    if (k < 0) break;
    ++comb[k];
    for (int j = k + 1; j < n; ++j) comb[j] = comb[j - 1] + 1;
  }
  REQUIRE(found);
  return best;
}

}  // namespace

TEST_CASE("two variable lp finds the exact vertex") {
  LpModel model;
  model.num_vars = 2;
  model.nonneg = {true, true};
  model.rows.push_back(row({{0, Rat(1)}, {1, Rat(2)}}, RowSense::le, Rat(4)));
  model.rows.push_back(row({{0, Rat(1)}}, RowSense::le, Rat(3)));
  RatVector c(2);
  c << Rat(1), Rat(1);
  const LpResult res = lp_exact(model, c, true);
  REQUIRE(res.status == LpStatus::optimal);
  CHECK(res.value == Rat(7, 2));
  CHECK(res.point[0] == Rat(3));
  CHECK(res.point[1] == Rat(1, 2));
}

TEST_CASE("infeasible bounds are reported") {
  LpModel model;
  model.num_vars = 1;
  model.nonneg = {false};
  model.rows.push_back(row({{0, Rat(1)}}, RowSense::ge, Rat(1)));
  model.rows.push_back(row({{0, Rat(1)}}, RowSense::le, Rat(0)));
  RatVector c(1);
  c << Rat(1);
  CHECK(lp_exact(model, c).status == LpStatus::infeasible);
}

TEST_CASE("unbounded problems return an improving ray") {
  LpModel model;
  model.num_vars = 2;
  model.nonneg = {true, true};
  model.rows.push_back(row({{0, Rat(1)}, {1, Rat(-1)}}, RowSense::le, Rat(1)));
  RatVector c(2);
  c << Rat(-1), Rat(-1);
  const LpResult res = lp_exact(model, c);
  REQUIRE(res.status == LpStatus::unbounded);
  CHECK(dot(c, res.ray) < 0);
  CHECK(res.ray[0] >= 0);
  CHECK(res.ray[1] >= 0);
  // Recession direction: row coefficients applied to the ray stay nonpositive.
  CHECK(res.ray[0] - res.ray[1] <= 0);
}

TEST_CASE("degenerate cycling example terminates at the optimum") {
  // Beale's example, known to cycle under naive most-negative pricing.
  LpModel model;
  model.num_vars = 4;
  model.nonneg = {true, true, true, true};
  model.rows.push_back(row(
      {{0, Rat(1, 4)}, {1, Rat(-60)}, {2, Rat(-1, 25)}, {3, Rat(9)}}, RowSense::le, Rat(0)));
  model.rows.push_back(row(
      {{0, Rat(1, 2)}, {1, Rat(-90)}, {2, Rat(-1, 50)}, {3, Rat(3)}}, RowSense::le, Rat(0)));
  model.rows.push_back(row({{2, Rat(1)}}, RowSense::le, Rat(1)));
  RatVector c(4);
  c << Rat(-3, 4), Rat(150), Rat(-1, 50), Rat(6);
  const LpResult res = lp_exact(model, c);
  REQUIRE(res.status == LpStatus::optimal);
  CHECK(res.value == Rat(-1, 20));
}

TEST_CASE("equalities with free variables presolve away") {
  LpModel model;
  model.num_vars = 3;
  model.nonneg = {true, false, false};
  model.rows.push_back(row({{0, Rat(1)}, {1, Rat(1)}, {2, Rat(1)}}, RowSense::eq, Rat(5)));
  model.rows.push_back(row({{1, Rat(1)}, {2, Rat(-1)}}, RowSense::eq, Rat(1)));
  RatVector c(3);
  c << Rat(1), Rat(0), Rat(2);
  const LpResult res = lp_exact(model, c);
  REQUIRE(res.status == LpStatus::optimal);
  CHECK(res.value == Rat(4));
  CHECK(satisfies(model, res.point));
}

TEST_CASE("empty rows detect inconsistency") {
  LpModel model;
  model.num_vars = 1;
  model.nonneg = {true};
  model.rows.push_back(row({{0, Rat(0)}}, RowSense::eq, Rat(5)));
  RatVector c(1);
  c << Rat(1);
  CHECK(lp_exact(model, c).status == LpStatus::infeasible);
}

TEST_CASE("rays survive elimination of free variables") {
  LpModel model;
  model.num_vars = 2;
  model.nonneg = {false, true};
  model.rows.push_back(row({{0, Rat(1)}, {1, Rat(-1)}}, RowSense::eq, Rat(0)));
  RatVector c(2);
  c << Rat(0), Rat(-1);
  const LpResult res = lp_exact(model, c);
  REQUIRE(res.status == LpStatus::unbounded);
  CHECK(dot(c, res.ray) < 0);
  CHECK(res.ray[0] == res.ray[1]);
  CHECK(res.ray[1] > 0);
}

TEST_CASE("random polytopes match the vertex enumeration oracle") {
  Rng rng(0xabc123);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform(0, 1));
    const int m = 3 + static_cast<int>(rng.uniform(0, 3));
    LpModel model;
    model.num_vars = n;
    model.nonneg.assign(n, false);
    for (int i = 0; i < m; ++i) {
      std::vector<std::pair<int, Rat>> terms;
      bool nonzero = false;
      for (int v = 0; v < n; ++v) {
        const long a = rng.uniform(-4, 4);
        if (a != 0) {
          terms.emplace_back(v, Rat(a));
          nonzero = true;
        }
      }
      if (!nonzero) terms.emplace_back(0, Rat(1));
      if (rng.uniform(0, 1) == 0) {
        model.rows.push_back(row(std::move(terms), RowSense::le, Rat(rng.uniform(1, 6))));
      } else {
        model.rows.push_back(row(std::move(terms), RowSense::ge, Rat(rng.uniform(-6, -1))));
      }
    }
    for (int v = 0; v < n; ++v) {
      model.rows.push_back(row({{v, Rat(1)}}, RowSense::le, Rat(10)));
      model.rows.push_back(row({{v, Rat(-1)}}, RowSense::le, Rat(10)));
    }
    LpContext ctx(model);
    for (int k = 0; k < 2; ++k) {
      RatVector c(n);
      bool any = false;
      for (int v = 0; v < n; ++v) {
        c[v] = Rat(rng.uniform(-5, 5));
        if (c[v] != 0) any = true;
      }
      if (!any) c[0] = 1;
      const Rat expect = vertex_oracle_max(model, c);
      const LpResult warm = ctx.maximize(c);
      REQUIRE(warm.status == LpStatus::optimal);
      CHECK(warm.value == expect);
      CHECK(satisfies(model, warm.point));
      const LpResult cold = lp_exact(model, c, true);
      REQUIRE(cold.status == LpStatus::optimal);
      CHECK(cold.value == expect);
    }
  }
}

TEST_CASE("parametric pin rows support membership batches") {
  LpModel model;
  model.num_vars = 2;
  model.nonneg = {true, true};
  model.rows.push_back(row({{0, Rat(1)}, {1, Rat(2)}}, RowSense::le, Rat(4)));
  model.rows.push_back(row({{0, Rat(1)}}, RowSense::le, Rat(3)));
  model.rows.push_back(row({{0, Rat(1)}}, RowSense::eq, Rat(0)));
  model.rows.push_back(row({{1, Rat(1)}}, RowSense::eq, Rat(0)));
  LpContext ctx(model, {2, 3});

  LpModel bare;
  bare.num_vars = 2;
  bare.nonneg = {true, true};
  bare.rows.push_back(model.rows[0]);
  bare.rows.push_back(model.rows[1]);

  Rng rng(0x77aa);
  int feasible_seen = 0, infeasible_seen = 0;
  for (int k = 0; k < 24; ++k) {
    RatVector p(2);
    p << Rat(rng.uniform(-1, 7), 2), Rat(rng.uniform(-1, 7), 2);
    const bool expect = satisfies(bare, p) && p[0] >= 0 && p[1] >= 0;
    const LpResult res = ctx.feasible_with_rhs(p);
    if (expect) {
      ++feasible_seen;
      REQUIRE(res.status == LpStatus::optimal);
      CHECK(res.point[0] == p[0]);
      CHECK(res.point[1] == p[1]);
    } else {
      ++infeasible_seen;
      CHECK(res.status == LpStatus::infeasible);
    }
  }
  CHECK(feasible_seen > 0);
  CHECK(infeasible_seen > 0);

  // The context still optimizes correctly after rhs churn.
  RatVector c(2);
  c << Rat(1), Rat(1);
  RatVector back(2);
  back << Rat(0), Rat(0);
  (void)ctx.feasible_with_rhs(back);
  const LpResult opt = ctx.minimize(c);
  REQUIRE(opt.status == LpStatus::optimal);
  CHECK(opt.value == Rat(0));
}

TEST_CASE("warm restarts agree with cold solves across objectives") {
  LpModel model;
  model.num_vars = 3;
  model.nonneg = {true, true, true};
  model.rows.push_back(row({{0, Rat(1)}, {1, Rat(1)}, {2, Rat(1)}}, RowSense::le, Rat(6)));
  model.rows.push_back(row({{0, Rat(1)}, {1, Rat(-1)}}, RowSense::ge, Rat(-2)));
  model.rows.push_back(row({{1, Rat(1)}, {2, Rat(2)}}, RowSense::le, Rat(5)));
  LpContext ctx(model);
  Rng rng(0x5151);
  for (int k = 0; k < 12; ++k) {
    RatVector c(3);
    for (int v = 0; v < 3; ++v) c[v] = Rat(rng.uniform(-6, 6));
    const LpResult warm = ctx.minimize(c);
    const LpResult cold = lp_exact(model, c);
    REQUIRE(warm.status == cold.status);
    if (warm.status == LpStatus::optimal) {
      CHECK(warm.value == cold.value);
      CHECK(satisfies(model, warm.point));
    } else if (warm.status == LpStatus::unbounded) {
      CHECK(dot(c, warm.ray) < 0);
    }
  }
  CHECK(ctx.pivot_count() > 0);
}
