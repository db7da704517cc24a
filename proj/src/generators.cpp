#include <string>

#include "deltaef/errors.hpp"
#include "deltaef/linalg.hpp"
#include "deltaef/pipeline.hpp"

namespace deltaef {

namespace {

// Columns e_i - e_j over `nodes` coordinates, pairs in lexicographic order.
IntMatrix pair_differences(Eigen::Index nodes) {
  IntMatrix d = IntMatrix::Zero(nodes, nodes * (nodes - 1) / 2);
  Eigen::Index col = 0;
  for (Eigen::Index i = 0; i < nodes; ++i)
    for (Eigen::Index j = i + 1; j < nodes; ++j, ++col) {
      d(i, col) = 1;
      d(j, col) = -1;
    }
  return d;
}

Int binomial(Eigen::Index m, Eigen::Index n) {
  Int r = 1;
  for (Eigen::Index i = 0; i < n; ++i) r = r * Int(m - i) / Int(i + 1);
  return r;
}

// The counterexample families are strictly bimodular by construction; attach
// that knowledge only when honest enumeration would blow the default cap.
void attach_profile_if_uncheckable(ProblemInstance& inst) {
  const PipelineLimits defaults;
  if (binomial(inst.a.rows(), inst.a.cols()) > Int(defaults.subdet_cap))
    inst.trusted_profile = TrustedProfile{Int(2), Int(2), true};
}

}  // namespace

ProblemInstance gen_dual_complete(int r, const IntMatrix& scale, const PipelineLimits& limits) {
  if (r < 4 || r > 7) throw std::invalid_argument("r must lie between 4 and 7");
  const IntMatrix d = pair_differences(r - 1);
  const Eigen::Index n = d.cols();
  const Eigen::Index m = d.rows() + n;
  IntMatrix base(m, n);
  base.topRows(d.rows()) = -d;
  base.bottomRows(n) = IntMatrix::Identity(n, n);

  if (scale.rows() != n || scale.cols() != n)
    throw std::invalid_argument("scale must be square of size " + std::to_string(n));
  Int delta = det_exact(scale);
  if (delta < 0) delta = -delta;
  if (delta == 0) throw std::invalid_argument("scale must be nonsingular");
  if (delta > limits.delta_cap)
    throw CapExceededError("scale determinant exceeds the delta cap");

  const IntMatrix scale_t = scale.transpose();
  ProblemInstance inst;
  inst.a = base * scale_t;

  // b = base column k = A (scale^{-T} e_k); pick the first witness column
  // that is fractional so the coset target is nontrivial when delta > 1.
  const auto inv = inverse_exact(to_rat(scale_t));
  Eigen::Index k = 0;
  for (Eigen::Index c = 0; c < n; ++c)
    if (!is_integer(RatVector(inv->col(c)))) {
      k = c;
      break;
    }
  inst.b = base.col(k);
  inst.label = "dual-complete r=" + std::to_string(r) + " scale-det=" + delta.str() +
               " z=column " + std::to_string(k) + " of the inverse transposed scale";

  // Realize the slack form once and hand the tree layout on as a hint.
  const ModularityProfile profile{delta, delta, true, std::nullopt};
  const BasisSplit split = find_basis(inst.a, profile);
  const auto inv_basis = inverse_exact(to_rat(split.a_basis));
  const RatMatrix s_rat = -(to_rat(split.a_nonbasis) * *inv_basis);
  const Eigen::Index tree = split.a_nonbasis.rows();
  IntMatrix slack(tree, n + tree);
  for (Eigen::Index i = 0; i < tree; ++i)
    for (Eigen::Index j = 0; j < n; ++j) slack(i, j) = to_int(s_rat(i, j));
  slack.rightCols(tree) = IntMatrix::Identity(tree, tree);
  const GraphRealization g = realize_graphic(slack, std::nullopt, limits.realize_budget);

  GraphHint hint;
  hint.nodes = g.node_count;
  for (Eigen::Index t = 0; t < tree; ++t) {
    hint.arcs.push_back(g.arcs[static_cast<std::size_t>(n + t)]);
    hint.column_map.push_back(split.nonbasis_rows[static_cast<std::size_t>(t)]);
  }
  inst.graph_hint = std::move(hint);
  return inst;
}

ProblemInstance gen_counterexample(CounterexampleKind kind, int size) {
  if (kind == CounterexampleKind::cevallos) {
    if (size < 2 || size % 2 != 0)
      throw std::invalid_argument("cevallos size must be an even node count of at least 2");
    const int nodes = size;
    std::vector<std::pair<int, int>> arcs;
    for (int v = 0; v < nodes; ++v)
      for (int w = 0; w < nodes; ++w)
        if (v != w) arcs.emplace_back(v, w);
    const Eigen::Index num_arcs = static_cast<Eigen::Index>(arcs.size());
    const Eigen::Index cols = num_arcs + (nodes - 1) + 1;
    const Eigen::Index rows = 2 * num_arcs + 2;

    // [-I  Dbar^T  0; -I  0  0; 0  1^T  -2; 0  -1^T  2] with Dbar the
    // node-arc incidence of the complete digraph less its first node row.
    IntMatrix a = IntMatrix::Zero(rows, cols);
    for (Eigen::Index e = 0; e < num_arcs; ++e) {
      a(e, e) = -1;
      a(num_arcs + e, e) = -1;
      const auto [tail, head] = arcs[static_cast<std::size_t>(e)];
      if (tail != 0) a(e, num_arcs + tail - 1) = 1;
      if (head != 0) a(e, num_arcs + head - 1) = -1;
    }
    for (int v = 1; v < nodes; ++v) {
      a(rows - 2, num_arcs + v - 1) = 1;
      a(rows - 1, num_arcs + v - 1) = -1;
    }
    a(rows - 2, cols - 1) = -2;
    a(rows - 1, cols - 1) = 2;

    ProblemInstance inst;
    inst.a = std::move(a);
    inst.b = IntVector::Zero(rows);
    inst.b[rows - 2] = 1;
    inst.b[rows - 1] = -1;
    inst.label = "cevallos nodes=" + std::to_string(nodes);
    attach_profile_if_uncheckable(inst);
    return inst;
  }

  if (size < 2) throw std::invalid_argument("jia size must be at least 2");
  const int n = size;
  const Eigen::Index edges = static_cast<Eigen::Index>(n) * n;
  const Eigen::Index cols = edges + 1;
  const Eigen::Index rows = 4 * n + edges + 2;

  // Node-arc incidence of K_{n,n} oriented left to right; edge (i,j) is
  // column i*n+j.
  IntMatrix dg = IntMatrix::Zero(2 * n, edges);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      dg(i, static_cast<Eigen::Index>(i) * n + j) = 1;
      dg(n + j, static_cast<Eigen::Index>(i) * n + j) = -1;
    }

  // [D  0; -D  0; -I  0; gamma^T  -2; -gamma^T  2], first edge colored red.
  IntMatrix a = IntMatrix::Zero(rows, cols);
  a.block(0, 0, 2 * n, edges) = dg;
  a.block(2 * n, 0, 2 * n, edges) = -dg;
  a.block(4 * n, 0, edges, edges) = -IntMatrix::Identity(edges, edges);
  a(rows - 2, 0) = 1;
  a(rows - 1, 0) = -1;
  a(rows - 2, cols - 1) = -2;
  a(rows - 1, cols - 1) = 2;

  ProblemInstance inst;
  inst.a = std::move(a);
  inst.b = IntVector::Zero(rows);
  for (int i = 0; i < n; ++i) {
    inst.b[i] = 1;       // (1/n) * row degree of a left node
    inst.b[n + i] = -1;  // likewise for a right node
    inst.b[2 * n + i] = -1;
    inst.b[3 * n + i] = 1;
  }
  inst.b[rows - 2] = 1;
  inst.b[rows - 1] = -1;
  inst.label = "jia bipartite-side=" + std::to_string(n);
  attach_profile_if_uncheckable(inst);
  return inst;
}

ProblemInstance gen_odd_cycle_stab(int k) {
  if (k < 3 || k > 9 || k % 2 == 0)
    throw std::invalid_argument("cycle length must be odd and between 3 and 9");
  ProblemInstance inst;
  inst.a = IntMatrix::Zero(k, k);
  for (int e = 0; e < k; ++e) {
    inst.a(e, e) = 1;
    inst.a(e, (e + 1) % k) = 1;
  }
  inst.b = IntVector::Constant(k, Int(1));
  inst.label = "odd-cycle-stab k=" + std::to_string(k);
  return inst;
}

}  // namespace deltaef
