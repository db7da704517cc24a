#include "deltaef/formulation.hpp"

#include <algorithm>
#include <stdexcept>

namespace deltaef {

const VariableBlock& ExtendedFormulation::block(const std::string& name) const {
  const auto it = std::find_if(blocks.begin(), blocks.end(),
                               [&](const VariableBlock& b) { return b.name == name; });
  if (it == blocks.end()) throw std::out_of_range("no variable block named " + name);
  return *it;
}

long ExtendedFormulation::inequality_count() const {
  long count = 0;
  for (const auto& r : rows)
    if (r.row.sense != RowSense::eq) ++count;
  return count;
}

long ExtendedFormulation::equation_count() const {
  return static_cast<long>(rows.size()) - inequality_count();
}

LpModel to_lp_model(const ExtendedFormulation& ef) {
  LpModel model;
  model.num_vars = ef.num_vars;
  model.rows.reserve(ef.rows.size());
  for (const auto& r : ef.rows) model.rows.push_back(r.row);
  return model;
}

RatVector project_point(const ExtendedFormulation& ef, const RatVector& v) {
  if (v.size() != ef.num_vars) throw std::invalid_argument("point has the wrong dimension");
  return ef.projection * v + ef.projection_offset;
}

}  // namespace deltaef
