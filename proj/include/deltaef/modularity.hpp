#pragma once

#include <optional>
#include <vector>

#include "deltaef/rational.hpp"

namespace deltaef {

// Subdeterminant profile of a full-column-rank m x n integer matrix: the
// largest n x n minor magnitude, the gcd of the nonzero magnitudes, and
// whether every nonzero minor has the same magnitude.
struct ModularityProfile {
  Int delta = 0;
  Int gcd = 0;
  bool strictly_modular = false;
  std::optional<std::vector<Eigen::Index>> witness_basis;
};

// Partition of the rows into a determinant-witness basis and the rest.
struct BasisSplit {
  std::vector<Eigen::Index> basis_rows;
  std::vector<Eigen::Index> nonbasis_rows;
  IntMatrix a_basis;
  IntMatrix a_nonbasis;
};

// Enumerates all n x n row submatrices. Throws CapExceededError when the
// subset count exceeds `cap` and std::invalid_argument on rank deficiency.
ModularityProfile subdeterminant_profile(const IntMatrix& a, long cap = 2000000);

// Lexicographically smallest row basis; under a strict profile its
// determinant magnitude equals profile.delta (checked exactly).
BasisSplit find_basis(const IntMatrix& a, const ModularityProfile& profile);

// Brute-force total unimodularity: every square minor in {0, +1, -1}.
// Throws CapExceededError when the total minor count exceeds `cap`.
bool is_totally_unimodular(const IntMatrix& m, long cap = 1000000);

}  // namespace deltaef
