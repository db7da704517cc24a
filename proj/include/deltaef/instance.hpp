#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "deltaef/rational.hpp"

namespace deltaef {

// Optional realization hint: a spanning tree layout for the identity columns
// of the reformulated system. column_map[t] is the row of A carried by tree
// arc t.
struct GraphHint {
  int nodes = 0;
  std::vector<std::pair<int, int>> arcs;
  std::vector<Eigen::Index> column_map;
};

// Caller-supplied subdeterminant profile for instances whose exact profiling
// exceeds the enumeration cap.
struct TrustedProfile {
  Int delta = 0;
  Int gcd = 0;
  bool strict = false;
};

struct ProblemInstance {
  IntMatrix a;
  IntVector b;
  std::optional<GraphHint> graph_hint;
  std::optional<TrustedProfile> trusted_profile;
  std::string label;
};

}  // namespace deltaef
