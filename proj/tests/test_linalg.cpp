#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "deltaef/linalg.hpp"
#include "test_util.hpp"

using namespace deltaef;
using namespace deltaef::testutil;

TEST_CASE("determinant matches permutation-expansion oracle on random matrices") {
  Rng rng(0x5eed01);
  for (int trial = 0; trial < 40; ++trial) {
    const Eigen::Index n = 1 + trial % 4;
    IntMatrix m = random_int_matrix(rng, n, n, -6, 6);
    CHECK(det_exact(m) == det_permutation_expansion(m));
  }
}

TEST_CASE("odd cycle incidence has determinant of absolute value two") {
  for (Eigen::Index k : {3, 5, 7}) {
    Int d = det_exact(cycle_incidence(k));
    CHECK((d == 2 || d == -2));
  }
  // Even cycles are singular.
  CHECK(det_exact(cycle_incidence(4)) == 0);
  CHECK(det_exact(cycle_incidence(6)) == 0);
}

TEST_CASE("rank of node-arc incidence is nodes minus components") {
  // Directed triangle plus an isolated extra arc pair: two components.
  IntMatrix d = node_arc_incidence(5, {{0, 1}, {1, 2}, {2, 0}, {3, 4}});
  CHECK(rank_exact(d) == 3);
  CHECK(rank_exact(RatMatrix(to_rat(d))) == 3);
}

TEST_CASE("unimodularity detects elementary products only") {
  IntMatrix u(3, 3);
  u << 1, 4, -2,
       0, -1, 3,
       0, 0, 1;
  CHECK(is_unimodular(u));
  IntMatrix s = u;
  s(0, 0) = 2;
  CHECK_FALSE(is_unimodular(s));
  CHECK_FALSE(is_unimodular(IntMatrix::Zero(2, 3)));
}

TEST_CASE("solve_exact returns the unique solution of a nonsingular system") {
  IntMatrix a(3, 3);
  a << 2, 1, 0,
       1, 3, 1,
       0, 1, 4;
  IntVector b(3);
  b << 3, 8, 13;
  auto x = solve_exact(a, b);
  REQUIRE(x.has_value());
  CHECK(RatVector(to_rat(a) * *x) == to_rat(b));
}

TEST_CASE("solve_exact reports inconsistency and handles wide systems") {
  IntMatrix a(3, 2);
  a << 1, 1,
       2, 2,
       0, 1;
  IntVector b(3);
  b << 1, 3, 0;  // second row contradicts the first
  CHECK_FALSE(solve_exact(a, b).has_value());

  RatMatrix w(2, 4);
  w << 1, 2, 0, 1,
       0, 0, 1, -1;
  RatVector rhs(2);
  rhs << 5, 2;
  auto x = solve_exact(w, rhs);
  REQUIRE(x.has_value());
  CHECK(RatVector(w * *x) == rhs);
}

TEST_CASE("kernel basis spans the cycle space of an incidence matrix") {
  // Two directed triangles sharing a node: cycle space has dimension 2.
  IntMatrix d = node_arc_incidence(5, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 2}});
  RatMatrix k = kernel_basis(to_rat(d));
  CHECK(k.cols() == 2);
  CHECK(RatMatrix(to_rat(d) * k).isZero(0));
  CHECK(rank_exact(RatMatrix(k)) == 2);
}

TEST_CASE("inverse_exact inverts and rejects singular input") {
  Rng rng(0x5eed02);
  for (int trial = 0; trial < 10; ++trial) {
    IntMatrix m = random_int_matrix(rng, 3, 3, -4, 4);
    auto inv = inverse_exact(to_rat(m));
    if (det_exact(m) == 0) {
      CHECK_FALSE(inv.has_value());
    } else {
      REQUIRE(inv.has_value());
      CHECK(RatMatrix(*inv * to_rat(m)) == RatMatrix(RatMatrix::Identity(3, 3)));
    }
  }
}

TEST_CASE("row denominator lcm clears a row exactly") {
  RatMatrix m(1, 3);
  m << Rat(1, 2), Rat(-2, 3), Rat(5);
  Int l = row_denominator_lcm(m, 0);
  CHECK(l == 6);
  for (Eigen::Index j = 0; j < 3; ++j) CHECK(is_integer(Rat(m(0, j) * Rat(l))));
}

TEST_CASE("entry filter for zero/plus-minus-one matrices") {
  IntMatrix ok(2, 2);
  ok << 0, 1, -1, 1;
  CHECK(entries_in_zero_pm_one(ok));
  ok(1, 1) = 2;
  CHECK_FALSE(entries_in_zero_pm_one(ok));
}
