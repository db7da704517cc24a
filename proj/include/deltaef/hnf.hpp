#pragma once

#include <vector>

#include "deltaef/instance.hpp"
#include "deltaef/modularity.hpp"
#include "deltaef/rational.hpp"

namespace deltaef {

// Unimodular triple: [U; R] is m x m unimodular with [U; R] A = [H; 0] and
// |det H| the gcd of the n x n minors of A.
struct HnfDecomposition {
  IntMatrix u;  // n x m
  IntMatrix r;  // (m-n) x m
  IntMatrix h;  // n x n, upper triangular, positive diagonal, reduced
  Int gcd_abs = 1;
};

enum class SystemMode { pure_cone, congruency };

// Slack-space description of the lattice points: y >= 0, R(y - b) = 0, and in
// congruency mode U(y - b) == 0 mod H Z^n with the target coset of b recorded.
// All matrices and b are stated with basis rows first; row_order maps system
// positions back to the original rows of A.
struct CongruentSystem {
  SystemMode mode = SystemMode::pure_cone;
  IntMatrix r;  // (m-n) x m
  IntMatrix u;  // n x m
  IntMatrix h;  // n x n
  IntVector b;  // length m, permuted
  int target_coset = 0;
  std::vector<Eigen::Index> row_order;
};

// Generic Hermite decomposition by unimodular integer row operations.
// Throws std::invalid_argument on rank deficiency.
HnfDecomposition hermite_decompose(const IntMatrix& a);

// Basis-split reformulation: U = [I 0], R = [-A_N A_B^{-1}  I], H = A_B, rows
// permuted so basis rows come first. Mode is pure_cone exactly when
// hnf.gcd_abs = 1. Throws when R is not integral (corrupted profile) or when
// b is outside the column span of A.
CongruentSystem reformulate(const ProblemInstance& inst, const HnfDecomposition& hnf,
                            const BasisSplit& split);

// Inverse affine map x = H^{-1} U (b - y); y is in system (permuted) order.
// Throws when R(y - b) != 0.
RatVector lift_back(const RatVector& y, const CongruentSystem& sys);

}  // namespace deltaef
