#include "deltaef/realize.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace deltaef {

namespace {

// Union-find over node labels, used for the global forest invariant.
struct DisjointSet {
  std::vector<int> parent;
  explicit DisjointSet(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

// Per-column bookkeeping for the path constraints: degrees of the placed
// support edges, the number placed, and the number of touched nodes. The
// placed subgraph is a forest, so its component count is touched - placed.
struct ColumnState {
  std::vector<int> degree;
  int placed = 0;
  int touched = 0;
};

struct Searcher {
  int k;
  const std::vector<std::vector<int>>& supports;
  std::vector<std::vector<int>> columns_of_edge;
  std::vector<ColumnState> state;
  std::vector<std::pair<int, int>> tree;
  long budget;
  long nodes_visited = 0;

  Searcher(int k_, int n, const std::vector<std::vector<int>>& supports_, long budget_)
      : k(k_), supports(supports_), columns_of_edge(k_), tree(k_, {-1, -1}), budget(budget_) {
    state.resize(supports.size());
    for (std::size_t j = 0; j < supports.size(); ++j) {
      state[j].degree.assign(k + 1, 0);
      for (int e : supports[j]) columns_of_edge[e].push_back(static_cast<int>(j));
    }
    (void)n;
  }

  // Applies edge t = (u, v) to every column containing it; rejects when a
  // column's subgraph stops being a disjoint union of extendable paths.
  bool place(int t, int u, int v) {
    for (std::size_t idx = 0; idx < columns_of_edge[t].size(); ++idx) {
      const int j = columns_of_edge[t][idx];
      ColumnState& cs = state[j];
      if (cs.degree[u] >= 2 || cs.degree[v] >= 2) {
        for (std::size_t back = 0; back < idx; ++back) undo_one(columns_of_edge[t][back], u, v);
        return false;
      }
      if (cs.degree[u] == 0) ++cs.touched;
      if (cs.degree[v] == 0) ++cs.touched;
      ++cs.degree[u];
      ++cs.degree[v];
      ++cs.placed;
      const int components = cs.touched - cs.placed;
      const int remaining = static_cast<int>(supports[j].size()) - cs.placed;
      if (components - remaining > 1 || (remaining == 0 && components != 1)) {
        for (std::size_t back = 0; back <= idx; ++back) undo_one(columns_of_edge[t][back], u, v);
        return false;
      }
    }
    return true;
  }

  void undo_one(int j, int u, int v) {
    ColumnState& cs = state[j];
    --cs.degree[u];
    --cs.degree[v];
    --cs.placed;
    if (cs.degree[u] == 0) --cs.touched;
    if (cs.degree[v] == 0) --cs.touched;
  }

  void unplace(int t, int u, int v) {
    for (int j : columns_of_edge[t]) undo_one(j, u, v);
  }

  // Depth-first over canonical placements: fresh labels are consumed in
  // order, so each tree shape is visited once per automorphism only.
  bool search(int t, int used, DisjointSet& forest) {
    if (t == k) return true;
    std::vector<std::pair<int, int>> candidates;
    for (int u = 0; u < used; ++u)
      for (int v = u + 1; v < used; ++v)
        if (forest.find(u) != forest.find(v)) candidates.emplace_back(u, v);
    for (int u = 0; u < used; ++u) candidates.emplace_back(u, used);
    if (used + 1 <= k) candidates.emplace_back(used, used + 1);
    for (const auto& [u, v] : candidates) {
      if (++nodes_visited > budget)
        throw BudgetExceededError("realization search budget exceeded");
      if (!place(t, u, v)) continue;
      DisjointSet saved = forest;
      forest.unite(u, v);
      tree[t] = {u, v};
      const int next_used = std::max(used, v + 1);
      if (search(t + 1, next_used, forest)) return true;
      forest = saved;
      unplace(t, u, v);
    }
    return false;
  }
};

// Reads off the non-tree arcs once a tree placement satisfies every path
// constraint: the arc joins the two degree-one endpoints of its support path.
std::optional<std::vector<std::pair<int, int>>> derive_arcs(
    int k, const std::vector<std::vector<int>>& supports,
    const std::vector<std::pair<int, int>>& tree) {
  std::vector<std::pair<int, int>> arcs;
  for (const auto& supp : supports) {
    if (supp.empty()) {
      arcs.emplace_back(0, 0);
      continue;
    }
    std::vector<int> degree(k + 1, 0);
    int touched = 0;
    for (int e : supp) {
      const auto [u, v] = tree[e];
      if (degree[u]++ == 0) ++touched;
      if (degree[v]++ == 0) ++touched;
    }
    if (touched != static_cast<int>(supp.size()) + 1) return std::nullopt;
    std::vector<int> ends;
    for (int v = 0; v <= k; ++v) {
      if (degree[v] > 2) return std::nullopt;
      if (degree[v] == 1) ends.push_back(v);
    }
    if (ends.size() != 2) return std::nullopt;
    arcs.emplace_back(ends[0], ends[1]);
  }
  return arcs;
}

GraphRealization assemble(int k, Eigen::Index m,
                          const std::vector<std::pair<int, int>>& non_tree_arcs,
                          const std::vector<std::pair<int, int>>& tree) {
  GraphRealization out;
  out.node_count = k + 1;
  out.arcs = non_tree_arcs;
  for (const auto& arc : tree) out.arcs.push_back(arc);
  out.full_incidence = IntMatrix::Zero(k + 1, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    const auto [tail, head] = out.arcs[static_cast<std::size_t>(a)];
    if (tail == head) continue;
    out.full_incidence(tail, a) = Int(1);
    out.full_incidence(head, a) = Int(-1);
  }
  out.e = out.full_incidence.topRows(k);
  return out;
}

}  // namespace

GraphRealization realize_graphic(const IntMatrix& r, const std::optional<TreeHint>& hint,
                                 long budget) {
  const Eigen::Index k = r.rows(), m = r.cols();
  const Eigen::Index n = m - k;
  if (n < 0) throw std::invalid_argument("matrix has more rows than columns");
  if (!(r.rightCols(k) == IntMatrix::Identity(k, k)))
    throw std::invalid_argument("matrix not in standard form [S | I]");
  const IntMatrix s = r.leftCols(n);
  if (!entries_in_zero_pm_one(s))
    throw std::invalid_argument("non-unit entry outside the identity block");

  if (k == 0) {
    GraphRealization out;
    out.node_count = 1;
    out.arcs.assign(static_cast<std::size_t>(m), {0, 0});
    out.e = IntMatrix::Zero(0, m);
    out.full_incidence = IntMatrix::Zero(1, m);
    return out;
  }

  std::vector<std::vector<int>> supports(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < k; ++i)
      if (s(i, j) != 0) supports[static_cast<std::size_t>(j)].push_back(static_cast<int>(i));

  if (hint) {
    if (hint->node_count != static_cast<int>(k) + 1 ||
        hint->tree_arcs.size() != static_cast<std::size_t>(k))
      throw std::invalid_argument("graph hint rejected: wrong node or tree arc count");
    DisjointSet forest(static_cast<int>(k) + 1);
    for (const auto& [u, v] : hint->tree_arcs) {
      if (u < 0 || v < 0 || u > static_cast<int>(k) || v > static_cast<int>(k) || u == v)
        throw std::invalid_argument("graph hint rejected: tree arc endpoint out of range");
      if (!forest.unite(u, v))
        throw std::invalid_argument("graph hint rejected: tree arcs contain a cycle");
    }
    const auto arcs = derive_arcs(static_cast<int>(k), supports, hint->tree_arcs);
    if (!arcs) throw std::invalid_argument("graph hint rejected: a support is not a tree path");
    return assemble(static_cast<int>(k), m, *arcs, hint->tree_arcs);
  }

  Searcher searcher(static_cast<int>(k), static_cast<int>(n), supports, budget);
  DisjointSet forest(static_cast<int>(k) + 1);
  if (!searcher.search(0, 0, forest))
    throw NotGraphicError("exhaustive tree search found no realization");
  const auto arcs = derive_arcs(static_cast<int>(k), supports, searcher.tree);
  if (!arcs) throw std::logic_error("accepted placement failed the path read-off");
  return assemble(static_cast<int>(k), m, *arcs, searcher.tree);
}

SignFix sign_fix(const IntMatrix& target_s, const GraphRealization& realized) {
  const Eigen::Index k = target_s.rows(), n = target_s.cols();
  if (realized.e.rows() != k || realized.e.cols() != n + k)
    throw std::invalid_argument("realization shape does not match the target");

  IntMatrix ratio(k, n);
  if (k > 0) {
    const RatMatrix e2 = realized.e.rightCols(k).cast<Rat>();
    const auto inv = inverse_exact(e2);
    if (!inv) throw std::logic_error("tree incidence block is singular");
    const RatMatrix rat_ratio = *inv * realized.e.leftCols(n).cast<Rat>();
    for (Eigen::Index i = 0; i < k; ++i)
      for (Eigen::Index j = 0; j < n; ++j) ratio(i, j) = to_int(rat_ratio(i, j));
  }
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if ((ratio(i, j) != 0) != (target_s(i, j) != 0))
        throw std::logic_error("support mismatch between realization and target");

  // Bipartite sign propagation: each connected component is anchored at its
  // smallest column, which fixes every other sign in the component.
  IntVector p1 = IntVector::Zero(k), p2 = IntVector::Zero(n);
  for (Eigen::Index j0 = 0; j0 < n; ++j0) {
    if (p2[j0] != 0) continue;
    p2[j0] = Int(1);
    std::deque<std::pair<bool, Eigen::Index>> queue{{false, j0}};
    while (!queue.empty()) {
      const auto [is_row, idx] = queue.front();
      queue.pop_front();
      if (is_row) {
        for (Eigen::Index j = 0; j < n; ++j) {
          if (target_s(idx, j) == 0) continue;
          const Int want = ratio(idx, j) / (p1[idx] * target_s(idx, j));
          if (p2[j] == 0) {
            p2[j] = want;
            queue.emplace_back(false, j);
          } else if (p2[j] != want) {
            throw std::logic_error("no consistent signing exists");
          }
        }
      } else {
        for (Eigen::Index i = 0; i < k; ++i) {
          if (target_s(i, idx) == 0) continue;
          const Int want = ratio(i, idx) / (target_s(i, idx) * p2[idx]);
          if (p1[i] == 0) {
            p1[i] = want;
            queue.emplace_back(true, i);
          } else if (p1[i] != want) {
            throw std::logic_error("no consistent signing exists");
          }
        }
      }
    }
  }
  for (Eigen::Index i = 0; i < k; ++i)
    if (p1[i] == 0) p1[i] = Int(1);
  for (Eigen::Index j = 0; j < n; ++j)
    if (p2[j] == 0) p2[j] = Int(1);
  return SignFix{p1, p2};
}

IntMatrix incidence_matrix(const GraphRealization& realized, const SignFix& fix) {
  const Eigen::Index k = fix.p1.size(), n = fix.p2.size();
  if (realized.full_incidence.cols() != n + k)
    throw std::invalid_argument("sign fix shape does not match the realization");
  IntMatrix d = realized.full_incidence;
  for (Eigen::Index j = 0; j < n; ++j) d.col(j) *= fix.p2[j];
  for (Eigen::Index i = 0; i < k; ++i) d.col(n + i) *= fix.p1[i];
  return d;
}

}  // namespace deltaef
