#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "deltaef/errors.hpp"
#include "deltaef/linalg.hpp"
#include "deltaef/pipeline.hpp"
#include "test_util.hpp"

using namespace deltaef;
using namespace deltaef::testutil;

namespace {

IntVector int_vector(const std::vector<long>& v) {
  IntVector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = Int(v[i]);
  return out;
}

// Runs fn, which must throw std::invalid_argument, and returns the message.
template <typename Fn>
std::string rejection_message(Fn&& fn) {
  try {
    fn();
  } catch (const std::invalid_argument& e) {
    return e.what();
  }
  return "<no exception>";
}

IntMatrix diag_scale(const std::vector<long>& d) {
  const auto n = static_cast<Eigen::Index>(d.size());
  IntMatrix m = IntMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = Int(d[static_cast<std::size_t>(i)]);
  return m;
}

bool notes_mention(const ConditionReport& rep, const std::string& needle) {
  return std::any_of(rep.notes.begin(), rep.notes.end(), [&](const std::string& s) {
    return s.find(needle) != std::string::npos;
  });
}

RatVector unit_objective(int num_vars, int coord) {
  RatVector c = RatVector::Zero(num_vars);
  c[coord] = Rat(1);
  return c;
}

RatVector block_sum_objective(const ExtendedFormulation& ef, const std::string& name) {
  const VariableBlock& blk = ef.block(name);
  RatVector c = RatVector::Zero(ef.num_vars);
  for (int j = 0; j < blk.size; ++j) c[blk.offset + j] = Rat(1);
  return c;
}

// Every feasible point of an artifact must satisfy y = b - Ax coordinatewise.
void check_linking(const EfArtifact& art, const ProblemInstance& inst, const RatVector& point) {
  const Eigen::Index n = inst.a.cols(), m = inst.a.rows();
  const RatVector x = point.head(n);
  const RatVector y = point.segment(n, m);
  const RatVector residual = to_rat(inst.b) - to_rat(inst.a) * x;
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::Index source = art.system.row_order[static_cast<std::size_t>(i)];
    CHECK(y[i] == residual[source]);
  }
}

ProblemInstance one_dim(long a, long b) {
  ProblemInstance inst;
  inst.a = IntMatrix::Constant(1, 1, Int(a));
  inst.b = IntVector::Constant(1, Int(b));
  inst.label = "one-dim";
  return inst;
}

}  // namespace

TEST_CASE("validate_instance rejects malformed input") {
  ProblemInstance inst;
  inst.a = IntMatrix::Zero(0, 0);
  inst.b = IntVector::Zero(0);
  CHECK_THROWS_AS(validate_instance(inst), std::invalid_argument);

  inst = gen_odd_cycle_stab(5);
  inst.b = IntVector::Ones(4);
  CHECK_THROWS_AS(validate_instance(inst), std::invalid_argument);

  inst = gen_odd_cycle_stab(5);
  inst.a.row(3) = inst.a.row(2);  // duplicate edge rows leave rank 4 of 5
  inst.a.row(4) = inst.a.row(2);
  CHECK_THROWS_AS(validate_instance(inst), std::invalid_argument);

  inst = gen_odd_cycle_stab(5);
  GraphHint hint;
  hint.nodes = 2;
  hint.arcs = {{0, 1}};  // 5x5 instance has no tree arcs at all
  hint.column_map = {0};
  inst.graph_hint = hint;
  CHECK_THROWS_AS(validate_instance(inst), std::invalid_argument);
}

TEST_CASE("odd cycle instances are admitted with a strict profile") {
  const ProblemInstance inst = gen_odd_cycle_stab(5);
  const ConditionReport rep = check_conditions(inst);
  CHECK(rep.verdict == Verdict::accept);
  CHECK(rep.strictly_modular == ConditionStatus::ok);
  CHECK(rep.cographic == ConditionStatus::ok);
  CHECK(rep.span == ConditionStatus::ok);
  CHECK_FALSE(rep.profile_trusted);
  REQUIRE(rep.profile.has_value());
  CHECK(rep.profile->delta == 2);
  CHECK(rep.profile->gcd == 2);
  CHECK(rep.profile->strictly_modular);
  REQUIRE(rep.apex.has_value());
  for (Eigen::Index j = 0; j < 5; ++j) CHECK((*rep.apex)[j] == Rat(1, 2));
  CHECK_FALSE(rep.apex_integral);
}

TEST_CASE("counterexample instances are rejected on their own condition") {
  SUBCASE("span failure") {
    const ProblemInstance inst = gen_counterexample(CounterexampleKind::jia, 2);
    CHECK(inst.a.rows() == 14);
    CHECK(inst.a.cols() == 5);
    CHECK_FALSE(inst.trusted_profile.has_value());  // small enough to check honestly
    const ConditionReport rep = check_conditions(inst);
    CHECK(rep.verdict == Verdict::reject);
    CHECK(rep.strictly_modular == ConditionStatus::ok);
    CHECK(rep.profile->delta == 2);
    CHECK(rep.profile->strictly_modular);
    CHECK(rep.cographic == ConditionStatus::ok);
    CHECK(rep.span == ConditionStatus::fail);
    REQUIRE_FALSE(rep.notes.empty());
    CHECK(rep.notes.front().find("(iii)") != std::string::npos);
    CHECK(rejection_message([&] { build_ef(inst); }).find("(iii)") != std::string::npos);
  }

  SUBCASE("cographic failure") {
    // Rows are the edge difference vectors of the complete graph on five
    // nodes with the first coordinate dropped: unimodular, b = 0 in the span,
    // but the row matroid is the cycle matroid of a nonplanar graph, so no
    // tree realization of the slack form exists and the search proves it.
    IntMatrix a = IntMatrix::Zero(10, 4);
    int r = 0;
    for (int i = 0; i < 5; ++i)
      for (int j = i + 1; j < 5; ++j, ++r) {
        if (i > 0) a(r, i - 1) = 1;
        a(r, j - 1) = -1;
      }
    ProblemInstance inst;
    inst.a = a;
    inst.b = IntVector::Zero(10);
    inst.label = "complete graph edge differences";
    const ConditionReport rep = check_conditions(inst);
    CHECK(rep.verdict == Verdict::reject);
    CHECK(rep.strictly_modular == ConditionStatus::ok);
    CHECK_FALSE(rep.profile_trusted);
    CHECK(rep.profile->delta == 1);
    CHECK(rep.cographic == ConditionStatus::fail);
    CHECK(rep.span == ConditionStatus::ok);
    CHECK(rep.apex_integral);  // b = 0 makes the apex the origin
    REQUIRE_FALSE(rep.notes.empty());
    CHECK(rep.notes.front().find("(ii)") != std::string::npos);
    CHECK(rep.notes.front().find("exhausted every tree layout") != std::string::npos);
    CHECK(rejection_message([&] { build_ef(inst); }).find("(ii)") != std::string::npos);
  }

  SUBCASE("doubled clique instance is admitted at small size") {
    // At four nodes the doubled clique is still planar, so the slack form has
    // a genuine tree realization and every condition holds; the instance only
    // stops being realizable once the underlying clique loses planarity.
    const ProblemInstance inst = gen_counterexample(CounterexampleKind::cevallos, 4);
    CHECK(inst.a.rows() == 26);
    CHECK(inst.a.cols() == 16);
    REQUIRE(inst.trusted_profile.has_value());  // minor enumeration would blow the cap
    CHECK(inst.trusted_profile->delta == 2);
    CHECK(inst.trusted_profile->strict);
    const ConditionReport rep = check_conditions(inst);
    CHECK(rep.verdict == Verdict::accept);
    CHECK(rep.strictly_modular == ConditionStatus::ok);
    CHECK(rep.profile_trusted);
    CHECK(rep.cographic == ConditionStatus::ok);
    CHECK(rep.span == ConditionStatus::ok);
    CHECK_FALSE(rep.apex_integral);  // apex pins the doubled coordinate to -1/2
    const EfArtifact art = build_ef(inst);
    CHECK(art.branch == Branch::circulation);
    CHECK(art.coset_target != 0);
    CHECK(art.size.total_rows == static_cast<long>(art.formulation.rows.size()));
    CHECK(art.size.total_rows <= art.size.polynomial_bound);
    CHECK(art.formulation.inequality_count() <= art.formulation.declared_inequality_bound);
  }

  SUBCASE("realization budget exhaustion at larger size") {
    const ProblemInstance inst = gen_counterexample(CounterexampleKind::cevallos, 6);
    const ConditionReport rep = check_conditions(inst);
    CHECK(rep.verdict == Verdict::undecided);
    CHECK(rep.cographic == ConditionStatus::undecided);
    CHECK(rep.span == ConditionStatus::ok);
    REQUIRE_FALSE(rep.notes.empty());
    CHECK(rep.notes.front().find("(ii)") != std::string::npos);
    CHECK(rep.notes.front().find("budget") != std::string::npos);
  }
}

TEST_CASE("caps produce undecided verdicts instead of silent accepts") {
  ProblemInstance inst = gen_dual_complete(4, diag_scale({1, 1, 1}));
  PipelineLimits limits;
  limits.subdet_cap = 5;  // a 6x3 matrix has 20 maximal minors
  const ConditionReport rep = check_conditions(inst, limits);
  CHECK(rep.verdict == Verdict::undecided);
  CHECK(rep.strictly_modular == ConditionStatus::undecided);
  CHECK(rep.cographic == ConditionStatus::undecided);
  CHECK(rep.span == ConditionStatus::ok);
  REQUIRE_FALSE(rep.notes.empty());
  CHECK(rep.notes.front().find("(i)") != std::string::npos);
  CHECK_THROWS_AS(build_ef(inst, limits), std::invalid_argument);
}

TEST_CASE("trusted profiles are cross-checked against the greedy basis") {
  // A totally unimodular matrix with a lying strict profile of determinant 2:
  // the greedy basis realizes determinant 1 and unmasks the claim.
  ProblemInstance inst;
  inst.a = make_matrix({{1, 0}, {0, 1}, {-1, -1}});
  inst.b = int_vector({1, 1, -2});
  inst.trusted_profile = TrustedProfile{Int(2), Int(2), true};
  const ConditionReport rep = check_conditions(inst);
  CHECK(rep.verdict == Verdict::reject);
  CHECK(rep.strictly_modular == ConditionStatus::fail);
  CHECK(notes_mention(rep, "greedy basis determinant"));

  inst.trusted_profile = TrustedProfile{Int(2), Int(1), true};  // strict demands gcd = delta
  CHECK_THROWS_AS(check_conditions(inst), std::invalid_argument);
}

TEST_CASE("unimodular instances take the pure cone branch") {
  const ProblemInstance inst = gen_dual_complete(4, diag_scale({1, 1, 1}));
  const ConditionReport rep = check_conditions(inst);
  CHECK(rep.verdict == Verdict::accept);
  CHECK(rep.profile->delta == 1);
  CHECK(notes_mention(rep, "supplied hint"));

  const EfArtifact art = build_ef(inst);
  CHECK(art.branch == Branch::pure_cone);
  CHECK(art.coset_target == 0);
  CHECK(art.size.linking_rows == 6);
  CHECK(art.size.total_rows <= art.size.polynomial_bound);

  // The slack rows of the scaled dual description positively span the space,
  // so the polyhedron is the single integral point A^{-1}b and the cone
  // formulation must pin every coordinate of x to it.
  const LpModel model = to_lp_model(art.formulation);
  LpContext ctx(model);
  for (int j = 0; j < 3; ++j) {
    const RatVector c = unit_objective(art.formulation.num_vars, j);
    const LpResult lo = ctx.minimize(c);
    const LpResult hi = ctx.maximize(c);
    REQUIRE(lo.status == LpStatus::optimal);
    REQUIRE(hi.status == LpStatus::optimal);
    CHECK(lo.value == hi.value);
    CHECK(is_integer(lo.value));
    check_linking(art, inst, lo.point);
  }
}

TEST_CASE("integral apex instances reduce to a deduplicated facet list") {
  ProblemInstance inst;
  inst.a = make_matrix({{2}, {-2}, {2}});
  inst.b = int_vector({2, -2, 2});
  inst.label = "pinned point";
  const ConditionReport rep = check_conditions(inst);
  CHECK(rep.verdict == Verdict::accept);
  CHECK(rep.apex_integral);

  const EfArtifact art = build_ef(inst);
  CHECK(art.branch == Branch::apex);
  CHECK(art.formulation.num_vars == 1);
  CHECK(art.formulation.rows.size() == 2);  // rows 0 and 2 collapse
  for (const auto& fr : art.formulation.rows) CHECK(fr.tag == "facet");
  CHECK(art.size.apex_facet_bound == 16);
  CHECK(art.size.total_rows <= art.size.apex_facet_bound);

  const LpModel model = to_lp_model(art.formulation);
  LpContext ctx(model);
  const RatVector c = unit_objective(1, 0);
  CHECK(ctx.minimize(c).value == Rat(1));
  CHECK(ctx.maximize(c).value == Rat(1));

  // The same matrix with b = (1, -1, 1) has a half-integral apex instead.
  ProblemInstance shifted = inst;
  shifted.b = int_vector({1, -1, 1});
  const EfArtifact half = build_ef(shifted);
  CHECK(half.branch == Branch::circulation);
  CHECK(half.coset_target != 0);
}

TEST_CASE("a fractional one-dimensional instance rounds down through the disjunction") {
  const ProblemInstance inst = one_dim(2, 1);
  const EfArtifact art = build_ef(inst);
  CHECK(art.branch == Branch::circulation);
  CHECK(art.size.base_nodes == 1);  // the square case realizes as one node with a loop
  CHECK(art.size.layered_arcs == 2);

  // conv({x integer : 2x <= 1}) = {x <= 0}.
  const LpModel model = to_lp_model(art.formulation);
  LpContext ctx(model);
  const RatVector c = unit_objective(art.formulation.num_vars, 0);
  const LpResult hi = ctx.maximize(c);
  REQUIRE(hi.status == LpStatus::optimal);
  CHECK(hi.value == Rat(0));
  check_linking(art, inst, hi.point);
  CHECK(ctx.minimize(c).status == LpStatus::unbounded);

  // With b = 2 the apex x = 1 is integral and no disjunction is needed.
  const EfArtifact apex = build_ef(one_dim(2, 2));
  CHECK(apex.branch == Branch::apex);
  LpContext actx(to_lp_model(apex.formulation));
  CHECK(actx.maximize(unit_objective(1, 0)).value == Rat(1));
}

TEST_CASE("the odd cycle formulation carries the odd-cycle inequality") {
  const ProblemInstance inst = gen_odd_cycle_stab(5);
  const EfArtifact art = build_ef(inst);
  CHECK(art.branch == Branch::circulation);
  CHECK(art.coset_target != 0);
  CHECK(art.size.linking_rows == 10);
  CHECK(art.size.layered_arcs == 10);
  CHECK(art.size.total_rows <= art.size.polynomial_bound);
  CHECK(art.formulation.inequality_count() <= art.formulation.declared_inequality_bound);

  // Without the box, the integer hull still satisfies sum x <= 2 with
  // equality attained, one better than the fractional bound 5/2.
  const LpModel model = to_lp_model(art.formulation);
  LpContext ctx(model);
  const RatVector c = block_sum_objective(art.formulation, "x");
  const LpResult hi = ctx.maximize(c);
  REQUIRE(hi.status == LpStatus::optimal);
  CHECK(hi.value == Rat(2));
  check_linking(art, inst, hi.point);
  CHECK(ctx.minimize(c).status == LpStatus::unbounded);
}

TEST_CASE("box intersection recovers stable set maxima") {
  for (const auto& [k, expected] : std::vector<std::pair<int, long>>{{5, 2}, {7, 3}}) {
    const EfArtifact art = build_ef(gen_odd_cycle_stab(k));
    const ExtendedFormulation stab = stab_box_intersect(art);
    CHECK(stab.rows.size() == art.formulation.rows.size() + 2 * static_cast<std::size_t>(k));
    LpContext ctx(to_lp_model(stab));
    const LpResult hi = ctx.maximize(block_sum_objective(stab, "x"));
    REQUIRE(hi.status == LpStatus::optimal);
    CHECK(hi.value == Rat(expected));
    const LpResult lo = ctx.minimize(block_sum_objective(stab, "x"));
    REQUIRE(lo.status == LpStatus::optimal);
    CHECK(lo.value == Rat(0));
  }

  // A weighted run: doubling one vertex of C_5 moves the optimum to 3.
  const EfArtifact art = build_ef(gen_odd_cycle_stab(5));
  const ExtendedFormulation stab = stab_box_intersect(art);
  RatVector c = block_sum_objective(stab, "x");
  c[0] = Rat(2);
  LpContext ctx(to_lp_model(stab));
  CHECK(ctx.maximize(c).value == Rat(3));
}

TEST_CASE("scaled dual-complete instances certify an empty integer hull") {
  for (long det : {2L, 3L}) {
    const ProblemInstance inst = gen_dual_complete(4, diag_scale({det, 1, 1}));
    CHECK(inst.label.find("z=column 0") != std::string::npos);
    const ConditionReport rep = check_conditions(inst);
    CHECK(rep.verdict == Verdict::accept);
    CHECK(rep.profile->delta == det);
    CHECK_FALSE(rep.apex_integral);

    const EfArtifact art = build_ef(inst);
    CHECK(art.branch == Branch::circulation);
    CHECK(art.coset_target != 0);
    CHECK(art.size.total_rows <= art.size.polynomial_bound);

    // The rows positively span the space, so the polyhedron is one fractional
    // point and contains no integer point at all.
    LpContext ctx(to_lp_model(art.formulation));
    CHECK(ctx.feasible().status == LpStatus::infeasible);
  }
}

TEST_CASE("the witness column moves with the scaled coordinate") {
  const ProblemInstance inst = gen_dual_complete(4, diag_scale({1, 1, 2}));
  CHECK(inst.label.find("z=column 2") != std::string::npos);
  const IntMatrix base = dual_complete_matrix(4, 1);
  CHECK(inst.b == IntVector(base.col(2)));
  CHECK(check_conditions(inst).verdict == Verdict::accept);
}

TEST_CASE("generator guards reject out-of-range requests") {
  CHECK_THROWS_AS(gen_dual_complete(3, diag_scale({1})), std::invalid_argument);
  CHECK_THROWS_AS(gen_dual_complete(4, diag_scale({1, 1})), std::invalid_argument);
  CHECK_THROWS_AS(gen_dual_complete(4, IntMatrix::Zero(3, 3)), std::invalid_argument);
  CHECK_THROWS_AS(gen_dual_complete(4, diag_scale({7, 1, 1})), CapExceededError);
  CHECK_THROWS_AS(gen_counterexample(CounterexampleKind::cevallos, 3), std::invalid_argument);
  CHECK_THROWS_AS(gen_counterexample(CounterexampleKind::jia, 1), std::invalid_argument);
  CHECK_THROWS_AS(gen_odd_cycle_stab(4), std::invalid_argument);
  CHECK_THROWS_AS(gen_odd_cycle_stab(11), std::invalid_argument);
}

TEST_CASE("size metadata accounts for every row") {
  const std::vector<ProblemInstance> fixtures = {
      gen_odd_cycle_stab(5),
      gen_odd_cycle_stab(7),
      gen_dual_complete(4, diag_scale({1, 1, 1})),
      gen_dual_complete(4, diag_scale({2, 1, 1})),
      one_dim(2, 1),
      one_dim(2, 2),
  };
  for (const ProblemInstance& inst : fixtures) {
    const EfArtifact art = build_ef(inst);
    CAPTURE(inst.label);
    CHECK(art.size.total_rows ==
          art.size.equation_rows + art.size.inequality_rows);
    CHECK(art.size.total_rows == static_cast<long>(art.formulation.rows.size()));
    CHECK(art.size.inequality_rows <= art.formulation.declared_inequality_bound);
    CHECK(art.size.total_rows <= art.size.polynomial_bound);
    CHECK(art.size.base_nodes >= 1);
    if (art.branch == Branch::circulation) {
      const long m = static_cast<long>(inst.a.rows());
      Int delta = det_exact(art.system.h);
      if (delta < 0) delta = -delta;
      CHECK(art.size.linking_rows == 2 * m);
      CHECK(Int(art.size.layered_arcs) == delta * m);
    }
  }
}
