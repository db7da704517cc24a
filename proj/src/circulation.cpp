#include "deltaef/circulation.hpp"

#include <string>

namespace deltaef {

namespace {

long checked_pow(long base, int exp, long clamp) {
  long r = 1;
  for (int i = 0; i < exp; ++i) {
    if (r > clamp / (base == 0 ? 1 : base)) return clamp;
    r *= base;
  }
  return r;
}

// y_a = sum over layers of the layer copies of base arc a, read off the
// leading x block.
RatMatrix layer_sum_projection(const LayeredGraph& lg, int num_vars) {
  const Eigen::Index num_arcs = static_cast<Eigen::Index>(lg.base_arcs.size());
  RatMatrix proj = RatMatrix::Zero(num_arcs, num_vars);
  for (Eigen::Index e = 0; e < static_cast<Eigen::Index>(lg.origin.size()); ++e)
    proj(lg.origin[static_cast<std::size_t>(e)], e) = Rat(1);
  return proj;
}

ExtendedFormulation formulation_shell(const LayeredGraph& lg, long declared_bound) {
  ExtendedFormulation ef;
  ef.num_vars = static_cast<int>(lg.d_prime.cols());
  ef.blocks.push_back({"x", 0, ef.num_vars});
  ef.projection = layer_sum_projection(lg, ef.num_vars);
  ef.projection_offset = RatVector::Zero(static_cast<Eigen::Index>(lg.base_arcs.size()));
  ef.declared_inequality_bound = declared_bound;
  return ef;
}

long lemma_bound(const LayeredGraph& lg) {
  const int delta = lg.delta;
  const long f_bar = checked_pow(delta - 1, delta - 1, 1L << 40);
  const long tau_choices = checked_pow(lg.base_node_count, delta - 1, 1L << 40);
  return f_bar * tau_choices * (1 + static_cast<long>(delta) * static_cast<long>(lg.origin.size()));
}

}  // namespace

std::vector<Pattern> enumerate_patterns(const CosetSystem& cs, const IntVector& f) {
  const int delta = static_cast<int>(cs.delta);
  const int target = cs.classify(f);
  std::vector<Pattern> out;
  if (delta == 1 || target == 0) return out;

  std::vector<int> seq;
  // sums marks every class realized by a nonempty subset of seq; a branch
  // dies as soon as the zero class becomes realizable.
  auto dfs = [&](auto&& self, int total, const std::vector<char>& sums) -> void {
    if (!seq.empty() && total == target) out.push_back({seq});
    if (static_cast<int>(seq.size()) == delta - 1) return;
    for (int t = 1; t < delta; ++t) {
      std::vector<char> next = sums;
      next[static_cast<std::size_t>(t)] = 1;
      for (int s = 1; s < delta; ++s)
        if (sums[static_cast<std::size_t>(s)])
          next[static_cast<std::size_t>(cs.add_table[static_cast<std::size_t>(s)]
                                                     [static_cast<std::size_t>(t)])] = 1;
      if (next[0]) continue;
      seq.push_back(t);
      self(self, cs.add_table[static_cast<std::size_t>(total)][static_cast<std::size_t>(t)], next);
      seq.pop_back();
    }
  };
  dfs(dfs, 0, std::vector<char>(static_cast<std::size_t>(delta), 0));

  const long f_bar = checked_pow(delta - 1, delta - 1, 1L << 40);
  if (static_cast<long>(out.size()) > f_bar)
    throw std::logic_error("pattern count exceeds its proven bound");
  return out;
}

LayeredGraph build_layered(const IntMatrix& d, const IntMatrix& w, const CosetSystem& cs) {
  const Eigen::Index num_nodes = d.rows(), num_arcs = d.cols();
  if (w.cols() != num_arcs || w.rows() != cs.h.rows())
    throw std::invalid_argument("arc weight shape does not match the graph and coset system");

  LayeredGraph lg;
  lg.base_node_count = static_cast<int>(num_nodes);
  lg.delta = static_cast<int>(cs.delta);
  for (Eigen::Index a = 0; a < num_arcs; ++a) {
    int tail = -1, head = -1;
    for (Eigen::Index u = 0; u < num_nodes; ++u) {
      if (d(u, a) == 0) continue;
      if (d(u, a) == 1 && tail < 0) tail = static_cast<int>(u);
      else if (d(u, a) == -1 && head < 0) head = static_cast<int>(u);
      else throw std::invalid_argument("column is not a node-arc incidence column");
    }
    if ((tail < 0) != (head < 0))
      throw std::invalid_argument("column is not a node-arc incidence column");
    if (tail < 0) lg.base_arcs.emplace_back(0, 0);  // loop; the node is immaterial
    else lg.base_arcs.emplace_back(tail, head);
  }

  lg.d_prime = IntMatrix::Zero(lg.delta * num_nodes, lg.delta * num_arcs);
  lg.target_layer.resize(static_cast<std::size_t>(lg.delta * num_arcs));
  lg.origin.resize(static_cast<std::size_t>(lg.delta * num_arcs));
  for (Eigen::Index a = 0; a < num_arcs; ++a) {
    const int w_class = cs.classify(w.col(a));
    for (int layer = 0; layer < lg.delta; ++layer) {
      const int target = cs.add_table[static_cast<std::size_t>(layer)][static_cast<std::size_t>(w_class)];
      const Eigen::Index col = lg.arc_id(a, layer);
      lg.origin[static_cast<std::size_t>(col)] = a;
      lg.target_layer[static_cast<std::size_t>(col)] = target;
      const auto [tail, head] = lg.base_arcs[static_cast<std::size_t>(a)];
      const int from = lg.node_id(tail, layer), to = lg.node_id(head, target);
      if (from == to) continue;  // loop staying in its layer
      lg.d_prime(from, col) = Int(1);
      lg.d_prime(to, col) = Int(-1);
    }
  }
  return lg;
}

ExtendedFormulation assemble_disjunction(const LayeredGraph& lg, const std::vector<Pattern>& omega,
                                         const CosetSystem& cs, long assignment_cap) {
  const Eigen::Index num_arcs_prime = lg.d_prime.cols();
  const Eigen::Index num_nodes_prime = lg.d_prime.rows();
  const long bound = lemma_bound(lg);

  if (lg.delta == 1) {
    // No congruency classes to hit: the hull is the circulation cone itself.
    ExtendedFormulation ef = formulation_shell(lg, bound);
    for (Eigen::Index u = 0; u < num_nodes_prime; ++u) {
      LpRow row;
      for (Eigen::Index e = 0; e < num_arcs_prime; ++e)
        if (lg.d_prime(u, e) != 0) row.terms.emplace_back(static_cast<int>(e), Rat(lg.d_prime(u, e)));
      ef.rows.push_back({std::move(row), "cone"});
    }
    for (Eigen::Index e = 0; e < num_arcs_prime; ++e) {
      LpRow row;
      row.terms.emplace_back(static_cast<int>(e), Rat(1));
      row.sense = RowSense::ge;
      ef.rows.push_back({std::move(row), "nonneg"});
    }
    if (ef.inequality_count() > ef.declared_inequality_bound)
      throw std::logic_error("formulation exceeds its declared size bound");
    return ef;
  }

  if (omega.empty()) {
    // No pattern can reach the target class, so the lattice set is empty.
    ExtendedFormulation ef = formulation_shell(lg, bound);
    LpRow row;
    row.sense = RowSense::le;
    row.rhs = Rat(-1);
    ef.rows.push_back({std::move(row), "infeasible"});
    return ef;
  }

  long assignments = 0;
  for (const auto& p : omega) {
    assignments += checked_pow(lg.base_node_count, static_cast<int>(p.classes.size()),
                               assignment_cap + 1);
    if (assignments > assignment_cap)
      throw CapExceededError("pattern assignment count exceeds the configured cap");
  }

  ExtendedFormulation ef = formulation_shell(lg, bound);
  // Roster: per assignment, a copy block, one segment block per pattern
  // element, and a convex multiplier.
  struct AssignmentLayout {
    const Pattern* pattern;
    std::vector<int> tau;
    int copy_offset;
    int segments_offset;
    int lambda_offset;
  };
  std::vector<AssignmentLayout> layout;
  for (const auto& pattern : omega) {
    const int k = static_cast<int>(pattern.classes.size());
    std::vector<int> tau(static_cast<std::size_t>(k), 0);
    while (true) {
      AssignmentLayout al;
      al.pattern = &pattern;
      al.tau = tau;
      const int a = static_cast<int>(layout.size());
      al.copy_offset = ef.num_vars;
      ef.blocks.push_back({"copy:" + std::to_string(a), al.copy_offset,
                           static_cast<int>(num_arcs_prime)});
      al.segments_offset = al.copy_offset + static_cast<int>(num_arcs_prime);
      for (int j = 0; j < k; ++j)
        ef.blocks.push_back({"segment:" + std::to_string(a) + ":" + std::to_string(j),
                             al.segments_offset + j * static_cast<int>(num_arcs_prime),
                             static_cast<int>(num_arcs_prime)});
      al.lambda_offset = al.segments_offset + k * static_cast<int>(num_arcs_prime);
      ef.blocks.push_back({"lambda:" + std::to_string(a), al.lambda_offset, 1});
      ef.num_vars = al.lambda_offset + 1;
      layout.push_back(std::move(al));
      // Odometer over V^k, last position fastest.
      int pos = k - 1;
      while (pos >= 0 && tau[static_cast<std::size_t>(pos)] == lg.base_node_count - 1) {
        tau[static_cast<std::size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
      ++tau[static_cast<std::size_t>(pos)];
    }
  }
  ef.projection = layer_sum_projection(lg, ef.num_vars);

  // x equals the sum of the per-assignment copies.
  for (Eigen::Index e = 0; e < num_arcs_prime; ++e) {
    LpRow row;
    row.terms.emplace_back(static_cast<int>(e), Rat(-1));
    for (const auto& al : layout) row.terms.emplace_back(al.copy_offset + static_cast<int>(e), Rat(1));
    ef.rows.push_back({std::move(row), "aggregate"});
  }
  {
    LpRow row;
    for (const auto& al : layout) row.terms.emplace_back(al.lambda_offset, Rat(1));
    row.rhs = Rat(1);
    ef.rows.push_back({std::move(row), "convexity"});
  }

  for (std::size_t a = 0; a < layout.size(); ++a) {
    const auto& al = layout[a];
    const int k = static_cast<int>(al.pattern->classes.size());
    const std::string tag = "disjunct:" + std::to_string(a);
    // The copy decomposes into its segment flows.
    for (Eigen::Index e = 0; e < num_arcs_prime; ++e) {
      LpRow row;
      row.terms.emplace_back(al.copy_offset + static_cast<int>(e), Rat(-1));
      for (int j = 0; j < k; ++j)
        row.terms.emplace_back(al.segments_offset + j * static_cast<int>(num_arcs_prime) +
                                   static_cast<int>(e),
                               Rat(1));
      ef.rows.push_back({std::move(row), tag});
    }
    // Segment j ships one lambda-scaled unit from (v_j, before) to (v_j, after).
    int before = 0;
    for (int j = 0; j < k; ++j) {
      const int after = cs.add_table[static_cast<std::size_t>(before)]
                                    [static_cast<std::size_t>(al.pattern->classes[static_cast<std::size_t>(j)])];
      const int v = al.tau[static_cast<std::size_t>(j)];
      const int seg = al.segments_offset + j * static_cast<int>(num_arcs_prime);
      for (Eigen::Index u = 0; u < num_nodes_prime; ++u) {
        LpRow row;
        for (Eigen::Index e = 0; e < num_arcs_prime; ++e)
          if (lg.d_prime(u, e) != 0) row.terms.emplace_back(seg + static_cast<int>(e), Rat(lg.d_prime(u, e)));
        Rat demand(0);
        if (u == lg.node_id(v, before)) demand += Rat(1);
        if (u == lg.node_id(v, after)) demand -= Rat(1);
        if (demand != 0) row.terms.emplace_back(al.lambda_offset, -demand);
        if (!row.terms.empty()) ef.rows.push_back({std::move(row), tag});
      }
      before = after;
    }
    for (int j = 0; j < k; ++j)
      for (Eigen::Index e = 0; e < num_arcs_prime; ++e) {
        LpRow row;
        row.terms.emplace_back(al.segments_offset + j * static_cast<int>(num_arcs_prime) +
                                   static_cast<int>(e),
                               Rat(1));
        row.sense = RowSense::ge;
        ef.rows.push_back({std::move(row), tag});
      }
    LpRow lambda_row;
    lambda_row.terms.emplace_back(al.lambda_offset, Rat(1));
    lambda_row.sense = RowSense::ge;
    ef.rows.push_back({std::move(lambda_row), tag});
  }

  if (ef.inequality_count() > ef.declared_inequality_bound)
    throw std::logic_error("formulation exceeds its declared size bound");
  return ef;
}

RatVector project(const LayeredGraph& lg, const RatVector& x) {
  const Eigen::Index num_arcs = static_cast<Eigen::Index>(lg.base_arcs.size());
  if (x.size() != lg.d_prime.cols()) throw std::invalid_argument("layered flow has the wrong size");
  RatVector y = RatVector::Zero(num_arcs);
  for (Eigen::Index e = 0; e < x.size(); ++e) y[lg.origin[static_cast<std::size_t>(e)]] += x[e];
  return y;
}

ExtendedFormulation circulation_ef(const IntMatrix& d, const IntMatrix& w, const IntMatrix& h,
                                   const IntVector& f, const Int& delta_cap, long assignment_cap) {
  const CosetSystem cs = coset_representatives(h, delta_cap);
  if (f.size() != h.rows()) throw std::invalid_argument("congruency target has the wrong dimension");
  const LayeredGraph lg = build_layered(d, w, cs);
  if (cs.delta == 1) return assemble_disjunction(lg, {}, cs, assignment_cap);
  if (cs.classify(f) == 0)
    throw std::invalid_argument("zero-class congruency target belongs to the cone branch");
  return assemble_disjunction(lg, enumerate_patterns(cs, f), cs, assignment_cap);
}

}  // namespace deltaef
