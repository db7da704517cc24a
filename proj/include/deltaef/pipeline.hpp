#pragma once

#include <optional>
#include <string>
#include <vector>

#include "deltaef/formulation.hpp"
#include "deltaef/hnf.hpp"
#include "deltaef/instance.hpp"
#include "deltaef/modularity.hpp"
#include "deltaef/realize.hpp"

namespace deltaef {

// Budgets for the expensive admission checks and the disjunction size.
struct PipelineLimits {
  long subdet_cap = 2000000;
  long realize_budget = 5000000;
  Int delta_cap = Int(6);
  long assignment_cap = 100000;
};

enum class ConditionStatus { ok, fail, undecided };
enum class Verdict { accept, reject, undecided };

// Outcome of the three admission conditions: (i) the matrix is strictly
// modular, (ii) its row matroid is cographic, (iii) b lies in the column
// span. A capped check reports undecided, never a silent accept.
struct ConditionReport {
  ConditionStatus strictly_modular = ConditionStatus::undecided;
  ConditionStatus cographic = ConditionStatus::undecided;
  ConditionStatus span = ConditionStatus::undecided;
  std::optional<ModularityProfile> profile;
  bool profile_trusted = false;
  std::optional<RatVector> apex;
  bool apex_integral = false;
  Verdict verdict = Verdict::undecided;
  // Human-readable findings; the first entry names the first failing or
  // undecided condition as (i), (ii), or (iii).
  std::vector<std::string> notes;
};

// Throws std::invalid_argument on shape mismatches or rank deficiency.
void validate_instance(const ProblemInstance& inst);

ConditionReport check_conditions(const ProblemInstance& inst, const PipelineLimits& limits = {});

enum class Branch { apex, pure_cone, circulation };

// Row accounting for the built formulation. The polynomial bound is
// kPolynomialSizeConstant * n^delta and is asserted on every build.
struct SizeMetadata {
  long total_rows = 0;
  long equation_rows = 0;
  long inequality_rows = 0;
  long linking_rows = 0;
  long disjunction_inequality_bound = 0;
  long apex_facet_bound = 0;
  long polynomial_bound = 0;
  int base_nodes = 0;
  long layered_arcs = 0;
  std::string note;
};

inline constexpr long kPolynomialSizeConstant = 256;

// Final formulation over the original variables: the slack-space description
// plus linking equations y = b - Ax, projected onto the leading x block.
struct EfArtifact {
  ExtendedFormulation formulation;
  Branch branch = Branch::circulation;
  int coset_target = 0;
  SizeMetadata size;
  CongruentSystem system;
  std::optional<GraphRealization> realization;
  std::string label;
};

// Requires an accepting condition report; throws std::invalid_argument with
// the blocking condition otherwise. Branches: pure cone when the minor gcd is
// one, the plain inequality description when the apex is integral, and the
// congruency-circulation disjunction otherwise. Exactly one branch fires.
EfArtifact build_ef(const ProblemInstance& inst, const PipelineLimits& limits = {});

// Appends the 0 <= x <= 1 box, turning an edge-node incidence artifact with
// all-ones right-hand side into a stable set polytope formulation.
ExtendedFormulation stab_box_intersect(const EfArtifact& art);

// Scaled dual representation of the complete graph on r nodes (4 <= r <= 7):
// A = [-D; I] * scale^T with D the pair-difference columns on r-1 symbols.
// b is the first column of the unscaled stack whose witness point
// z = scale^{-T} e_k is fractional, so the instance exercises a nontrivial
// coset unless scale is unimodular. A spanning-tree hint derived from the
// generator's own realization run is attached.
ProblemInstance gen_dual_complete(int r, const IntMatrix& scale, const PipelineLimits& limits = {});

enum class CounterexampleKind { cevallos, jia };

// Instances that each violate exactly one admission condition: `cevallos`
// (size = even node count of a complete digraph) fails the cographic test,
// `jia` (size = one side of a complete bipartite graph) fails the span test.
ProblemInstance gen_counterexample(CounterexampleKind kind, int size);

// Edge-node incidence of the odd cycle C_k with b = 1; the stable set
// polytope of C_k is the box intersection of its integer hull.
ProblemInstance gen_odd_cycle_stab(int k);

}  // namespace deltaef
