#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "deltaef/errors.hpp"
#include "deltaef/linalg.hpp"

namespace deltaef {

// Pins the spanning-tree placement of the identity columns of [S | I]:
// tree_arcs[i] is the (tail, head) pair realizing identity column i on nodes
// 0..node_count-1. Non-tree arcs are derived from the fundamental circuits.
struct TreeHint {
  int node_count = 0;
  std::vector<std::pair<int, int>> tree_arcs;
};

// A graph whose column matroid equals that of the realized matrix. Arc i
// corresponds to column i; loops are recorded as equal endpoints and have
// zero incidence columns. e keeps the incidence rows of nodes
// 0..node_count-2; full_incidence appends the dropped node's row, -1^T e.
struct GraphRealization {
  int node_count = 0;
  std::vector<std::pair<int, int>> arcs;
  IntMatrix e;
  IntMatrix full_incidence;
};

// Diagonals of the +-1 scalings with p1 * S * p2 = E2^{-1} E1.
struct SignFix {
  IntVector p1;
  IntVector p2;
};

// Finds a graph realizing the column matroid of r = [S | I_k]: the identity
// columns span a tree and every S column's support is a tree path whose
// endpoints the corresponding arc joins. The search over tree placements is
// exhaustive, so NotGraphicError is a certificate at this scale;
// BudgetExceededError reports an inconclusive run. A hint skips the search:
// it is validated and rejected via std::invalid_argument when inconsistent.
GraphRealization realize_graphic(const IntMatrix& r,
                                 const std::optional<TreeHint>& hint = std::nullopt,
                                 long budget = 5000000);

// Solves p1 * target_s * p2 = E2^{-1} E1 for diagonal +-1 matrices by sign
// propagation, anchoring the first index of each free component to +1.
// Support disagreement or an inconsistent sign system is a logic error: the
// realization step already guarantees both hold.
SignFix sign_fix(const IntMatrix& target_s, const GraphRealization& realized);

// D = [e; -1^T e] * blockdiag(p2, p1), the incidence matrix of the realized
// graph with column signs flipped so that ker D = ker [target_s | I].
IntMatrix incidence_matrix(const GraphRealization& realized, const SignFix& fix);

}  // namespace deltaef
