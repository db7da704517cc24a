#pragma once

#include <utility>
#include <vector>

#include "deltaef/cosets.hpp"
#include "deltaef/errors.hpp"
#include "deltaef/formulation.hpp"
#include "deltaef/linalg.hpp"

namespace deltaef {

// A sequence of nonzero coset classes whose sum lies in the target class and
// in which no nonempty subset sums to the zero class.
struct Pattern {
  std::vector<int> classes;
};

// The coset-indexed cover of a base digraph: node (v, i) is id i*|V| + v,
// and the layer-i copy of base arc a is column i*|A| + a, pointing to the
// layer of class(g_i + W_a). Loops whose weight moves the class become
// ordinary arcs between layers.
struct LayeredGraph {
  int base_node_count = 0;
  std::vector<std::pair<int, int>> base_arcs;  // loops have equal endpoints
  int delta = 1;
  IntMatrix d_prime;                     // (delta*|V|) x (delta*|A|) incidence
  std::vector<int> target_layer;         // per layered arc
  std::vector<Eigen::Index> origin;      // layered arc -> base arc

  int node_id(int v, int layer) const { return layer * base_node_count + v; }
  Eigen::Index arc_id(Eigen::Index base_arc, int layer) const {
    return static_cast<Eigen::Index>(layer) * static_cast<Eigen::Index>(base_arcs.size()) +
           base_arc;
  }
};

// All patterns for the class of f, in lexicographic order (prefixes first).
// The result is empty exactly when f lies in the zero class.
std::vector<Pattern> enumerate_patterns(const CosetSystem& cs, const IntVector& f);

// Builds the coset cover of the digraph with incidence d under arc weights w
// (one column per arc). Zero incidence columns are read as loops at node 0.
LayeredGraph build_layered(const IntMatrix& d, const IntMatrix& w, const CosetSystem& cs);

// The disjunctive hull over all pattern assignments: for each pattern and
// each node sequence of its length, one disjunct of segment flows tied to a
// convex multiplier. Projects onto the layered flow block "x".
ExtendedFormulation assemble_disjunction(const LayeredGraph& lg, const std::vector<Pattern>& omega,
                                         const CosetSystem& cs, long assignment_cap = 100000);

// Sums the layer copies of each base arc.
RatVector project(const LayeredGraph& lg, const RatVector& x);

// Extended formulation of conv{y in Z_+^A : Dy = 0, Wy congruent to f mod
// H Z^d}, projected onto the base arc space. The zero class is the caller's
// branch (the plain cone needs no congruency machinery) and is rejected.
ExtendedFormulation circulation_ef(const IntMatrix& d, const IntMatrix& w, const IntMatrix& h,
                                   const IntVector& f, const Int& delta_cap = Int(6),
                                   long assignment_cap = 100000);

}  // namespace deltaef
