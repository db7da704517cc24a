#pragma once

#include <optional>

#include "deltaef/rational.hpp"

namespace deltaef {

// Fraction-free determinant (Bareiss). Exact for any integer matrix.
Int det_exact(const IntMatrix& m);

// Rank over the rationals via exact elimination.
Eigen::Index rank_exact(const RatMatrix& m);
Eigen::Index rank_exact(const IntMatrix& m);

// Square with determinant of absolute value one.
bool is_unimodular(const IntMatrix& m);

// One exact solution of A x = b, free coordinates pinned to zero; empty when
// the system is inconsistent. Unique exactly when rank(A) = cols(A).
std::optional<RatVector> solve_exact(const RatMatrix& a, const RatVector& b);
std::optional<RatVector> solve_exact(const IntMatrix& a, const IntVector& b);

// Columns form a basis of the right kernel {x : A x = 0}.
RatMatrix kernel_basis(const RatMatrix& a);

// Exact inverse; empty when singular.
std::optional<RatMatrix> inverse_exact(const RatMatrix& a);

// Least common multiple of the denominators of one row; 1 for an empty row.
Int row_denominator_lcm(const RatMatrix& m, Eigen::Index row);

// True when every entry lies in {0, +1, -1}.
bool entries_in_zero_pm_one(const IntMatrix& m);

}  // namespace deltaef
