#pragma once

#include <string>
#include <vector>

#include "deltaef/linalg.hpp"
#include "deltaef/simplex.hpp"

namespace deltaef {

// Contiguous slice of the variable roster, addressed by a stable name.
struct VariableBlock {
  std::string name;
  int offset = 0;
  int size = 0;
};

// One constraint plus a stable tag. Tags group the rows of a disjunct and
// name linking rows, so tests can drop a group and watch verification fail.
struct FormulationRow {
  LpRow row;
  std::string tag;
};

// A polyhedron {v : rows} together with the affine map back onto the
// instance's ambient space: ambient = projection * v + projection_offset.
// Variables are free; every nonnegativity constraint is an explicit row.
struct ExtendedFormulation {
  int num_vars = 0;
  std::vector<VariableBlock> blocks;
  std::vector<FormulationRow> rows;
  RatMatrix projection;
  RatVector projection_offset;
  // Declared inequality budget (the construction's counting argument);
  // inequality_count() must never exceed it.
  long declared_inequality_bound = 0;

  const VariableBlock& block(const std::string& name) const;
  long inequality_count() const;
  long equation_count() const;
};

// The constraint system as a solver model (all variables free).
LpModel to_lp_model(const ExtendedFormulation& ef);

// Applies the projection to a point in formulation variables.
RatVector project_point(const ExtendedFormulation& ef, const RatVector& v);

}  // namespace deltaef
