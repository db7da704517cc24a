#include "deltaef/pipeline.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "deltaef/circulation.hpp"
#include "deltaef/errors.hpp"
#include "deltaef/linalg.hpp"

namespace deltaef {

namespace {

long clamped_pow(long base, long exp, long clamp) {
  long r = 1;
  for (long i = 0; i < exp; ++i) {
    if (base != 0 && r > clamp / base) return clamp;
    r *= base;
  }
  return std::min(r, clamp);
}

std::string roman_note(const char* roman, const std::string& text) {
  return std::string("(") + roman + ") " + text;
}

// The slack-space coefficient matrix [S | I] with S = -A_N A_B^{-1}; under a
// strict profile every entry of S is a ratio of two minors, hence 0 or +-1.
IntMatrix standard_dual_form(const BasisSplit& split) {
  const Eigen::Index n = split.a_basis.rows();
  const Eigen::Index k = split.a_nonbasis.rows();
  const auto inv = inverse_exact(to_rat(split.a_basis));
  if (!inv) throw std::logic_error("basis split produced a singular basis");
  const RatMatrix s_rat = -(to_rat(split.a_nonbasis) * *inv);
  IntMatrix r(k, n + k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < n; ++j) r(i, j) = to_int(s_rat(i, j));
  r.rightCols(k) = IntMatrix::Identity(k, k);
  return r;
}

// Reorders the instance hint into the column order of the identity block:
// tree arc t must carry nonbasis row t.
std::optional<TreeHint> tree_hint_from(const std::optional<GraphHint>& hint,
                                       const BasisSplit& split) {
  if (!hint) return std::nullopt;
  const std::size_t k = split.nonbasis_rows.size();
  if (hint->arcs.size() != k || hint->column_map.size() != k)
    throw std::invalid_argument("graph hint arc count must equal the tree size m - n");
  TreeHint th;
  th.node_count = hint->nodes;
  th.tree_arcs.resize(k);
  for (std::size_t t = 0; t < k; ++t) {
    const Eigen::Index row = split.nonbasis_rows[t];
    const auto it = std::find(hint->column_map.begin(), hint->column_map.end(), row);
    if (it == hint->column_map.end())
      throw std::invalid_argument("graph hint does not cover nonbasis row " + std::to_string(row));
    th.tree_arcs[t] = hint->arcs[static_cast<std::size_t>(it - hint->column_map.begin())];
  }
  return th;
}

struct Admission {
  ConditionReport report;
  std::optional<BasisSplit> split;
  std::optional<GraphRealization> realization;
};

Admission admit(const ProblemInstance& inst, const PipelineLimits& limits) {
  validate_instance(inst);
  Admission adm;
  ConditionReport& rep = adm.report;
  std::vector<std::string> failures, undecided, info;

  // (i) strict modularity, from the trusted profile or by minor enumeration.
  if (inst.trusted_profile) {
    const TrustedProfile& tp = *inst.trusted_profile;
    if (tp.delta < 1 || tp.gcd < 1 || (tp.strict && tp.gcd != tp.delta))
      throw std::invalid_argument("inconsistent trusted profile");
    rep.profile = ModularityProfile{tp.delta, tp.gcd, tp.strict, std::nullopt};
    rep.profile_trusted = true;
    rep.strictly_modular = tp.strict ? ConditionStatus::ok : ConditionStatus::fail;
    if (tp.strict)
      info.push_back(roman_note("i", "strict modularity taken from the trusted profile"));
    else
      failures.push_back(roman_note("i", "the trusted profile declares the matrix not strictly modular"));
  } else {
    try {
      rep.profile = subdeterminant_profile(inst.a, limits.subdet_cap);
      if (rep.profile->strictly_modular) {
        rep.strictly_modular = ConditionStatus::ok;
      } else {
        rep.strictly_modular = ConditionStatus::fail;
        failures.push_back(roman_note(
            "i", "minors have magnitudes " + rep.profile->gcd.str() + " through " +
                     rep.profile->delta.str() + ", so the matrix is not strictly modular"));
      }
    } catch (const CapExceededError&) {
      rep.strictly_modular = ConditionStatus::undecided;
      undecided.push_back(roman_note("i", "minor enumeration exceeds the configured cap"));
    }
  }

  // (ii) cographic row matroid, by realizing the slack-space form as a graph.
  if (rep.strictly_modular != ConditionStatus::ok) {
    rep.cographic = ConditionStatus::undecided;
    undecided.push_back(roman_note("ii", "not evaluated: requires the strict profile of (i)"));
  } else {
    try {
      adm.split = find_basis(inst.a, *rep.profile);
    } catch (const std::logic_error&) {
      rep.strictly_modular = ConditionStatus::fail;
      rep.cographic = ConditionStatus::undecided;
      failures.push_back(roman_note(
          "i", "the greedy basis determinant contradicts the declared uniform minor magnitude"));
      undecided.push_back(roman_note("ii", "not evaluated: requires the strict profile of (i)"));
    }
    if (adm.split) {
      const IntMatrix r = standard_dual_form(*adm.split);
      std::optional<TreeHint> th;
      bool hint_rejected = false;
      try {
        th = tree_hint_from(inst.graph_hint, *adm.split);
      } catch (const std::invalid_argument& e) {
        hint_rejected = true;
        info.push_back(roman_note("ii", std::string("ignoring graph hint: ") + e.what()));
      }
      try {
        try {
          adm.realization = realize_graphic(r, th, limits.realize_budget);
        } catch (const std::invalid_argument& e) {
          // A structurally wrong hint does not witness anything; retry clean.
          if (!th) throw;
          hint_rejected = true;
          info.push_back(roman_note("ii", std::string("ignoring graph hint: ") + e.what()));
          adm.realization = realize_graphic(r, std::nullopt, limits.realize_budget);
        }
        rep.cographic = ConditionStatus::ok;
        if (inst.graph_hint && !hint_rejected)
          info.push_back(roman_note("ii", "realized the slack form along the supplied hint"));
      } catch (const NotGraphicError&) {
        rep.cographic = ConditionStatus::fail;
        failures.push_back(roman_note(
            "ii", "the realization search exhausted every tree layout, so the row matroid is "
                  "not cographic"));
      } catch (const BudgetExceededError&) {
        rep.cographic = ConditionStatus::undecided;
        undecided.push_back(roman_note("ii", "realization search budget exhausted inconclusively"));
      }
    }
  }

  // (iii) b in the column span, by an exact solve.
  rep.apex = solve_exact(inst.a, inst.b);
  if (rep.apex) {
    rep.span = ConditionStatus::ok;
    rep.apex_integral = is_integer(*rep.apex);
    info.push_back(roman_note("iii", rep.apex_integral
                                         ? "b = A x with an integral witness point"
                                         : "b = A x with a fractional witness point"));
  } else {
    rep.span = ConditionStatus::fail;
    failures.push_back(roman_note("iii", "b lies outside the column span of A"));
  }

  if (!failures.empty()) rep.verdict = Verdict::reject;
  else if (!undecided.empty()) rep.verdict = Verdict::undecided;
  else rep.verdict = Verdict::accept;

  rep.notes.insert(rep.notes.end(), failures.begin(), failures.end());
  rep.notes.insert(rep.notes.end(), undecided.begin(), undecided.end());
  rep.notes.insert(rep.notes.end(), info.begin(), info.end());
  return adm;
}

void append_link_rows(ExtendedFormulation& ef, const IntMatrix& a, const CongruentSystem& sys,
                      int y_offset) {
  const Eigen::Index m = a.rows(), n = a.cols();
  for (Eigen::Index i = 0; i < m; ++i) {
    LpRow row;
    const Eigen::Index source = sys.row_order[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < n; ++j)
      if (a(source, j) != 0) row.terms.emplace_back(static_cast<int>(j), Rat(a(source, j)));
    row.terms.emplace_back(y_offset + static_cast<int>(i), Rat(1));
    row.rhs = Rat(sys.b[i]);
    ef.rows.push_back({std::move(row), "link"});
  }
}

void fill_size_counts(EfArtifact& art) {
  SizeMetadata& sz = art.size;
  sz.total_rows = static_cast<long>(art.formulation.rows.size());
  sz.inequality_rows = art.formulation.inequality_count();
  sz.equation_rows = art.formulation.equation_count();
}

}  // namespace

void validate_instance(const ProblemInstance& inst) {
  if (inst.a.rows() == 0 || inst.a.cols() == 0)
    throw std::invalid_argument("instance matrix must be nonempty");
  if (inst.b.size() != inst.a.rows())
    throw std::invalid_argument("right-hand side length must match the row count");
  if (rank_exact(inst.a) != inst.a.cols())
    throw std::invalid_argument("instance matrix must have full column rank");
  if (inst.graph_hint) {
    const auto expected = static_cast<std::size_t>(inst.a.rows() - inst.a.cols());
    if (inst.graph_hint->arcs.size() != expected)
      throw std::invalid_argument("graph hint must supply exactly m - n tree arcs");
    if (inst.graph_hint->column_map.size() != inst.graph_hint->arcs.size())
      throw std::invalid_argument("graph hint column map must cover its arcs");
  }
}

ConditionReport check_conditions(const ProblemInstance& inst, const PipelineLimits& limits) {
  return admit(inst, limits).report;
}

EfArtifact build_ef(const ProblemInstance& inst, const PipelineLimits& limits) {
  Admission adm = admit(inst, limits);
  if (adm.report.verdict != Verdict::accept) {
    std::string why = adm.report.notes.empty() ? std::string("conditions not satisfied")
                                               : adm.report.notes.front();
    throw std::invalid_argument("instance not admitted: " + why);
  }

  const Eigen::Index m = inst.a.rows(), n = inst.a.cols();
  const HnfDecomposition hnf = hermite_decompose(inst.a);
  const CongruentSystem sys = reformulate(inst, hnf, *adm.split);
  const long delta = adm.report.profile->delta.convert_to<long>();

  EfArtifact art;
  art.system = sys;
  art.realization = adm.realization;
  art.label = inst.label;
  art.coset_target = sys.target_coset;
  art.size.polynomial_bound =
      kPolynomialSizeConstant * clamped_pow(static_cast<long>(n), delta, 1L << 40);
  art.size.base_nodes = adm.realization->node_count;
  art.size.note = "arc count m = n + (node count - 1) of the realized graph, linear in the rank";

  ExtendedFormulation& ef = art.formulation;
  ef.blocks.push_back({"x", 0, static_cast<int>(n)});

  if (sys.mode == SystemMode::pure_cone) {
    // Minor gcd one: the congruency is vacuous and the slack cone is exact.
    art.branch = Branch::pure_cone;
    ef.num_vars = static_cast<int>(n + m);
    ef.blocks.push_back({"y", static_cast<int>(n), static_cast<int>(m)});
    append_link_rows(ef, inst.a, sys, static_cast<int>(n));
    for (Eigen::Index i = 0; i < sys.r.rows(); ++i) {
      LpRow row;
      for (Eigen::Index j = 0; j < m; ++j)
        if (sys.r(i, j) != 0)
          row.terms.emplace_back(static_cast<int>(n + j), Rat(sys.r(i, j)));
      ef.rows.push_back({std::move(row), "cone"});
    }
    for (Eigen::Index j = 0; j < m; ++j) {
      LpRow row;
      row.terms.emplace_back(static_cast<int>(n + j), Rat(1));
      row.sense = RowSense::ge;
      ef.rows.push_back({std::move(row), "nonneg"});
    }
    art.size.linking_rows = static_cast<long>(m);
    art.size.layered_arcs = static_cast<long>(m);
    art.size.disjunction_inequality_bound = static_cast<long>(m);
  } else if (sys.target_coset == 0) {
    // Integral apex: the polyhedron equals its own integer hull, deduplicated.
    art.branch = Branch::apex;
    ef.num_vars = static_cast<int>(n);
    std::map<std::vector<Int>, bool> seen;
    for (Eigen::Index i = 0; i < m; ++i) {
      Int g(0);
      for (Eigen::Index j = 0; j < n; ++j) g = int_gcd(g, inst.a(i, j));
      if (g == 0) continue;  // vacuous 0 <= 0 row; b_i = 0 because b = A apex
      g = int_gcd(g, inst.b[i]);
      std::vector<Int> key;
      key.reserve(static_cast<std::size_t>(n) + 1);
      for (Eigen::Index j = 0; j < n; ++j) key.push_back(inst.a(i, j) / g);
      key.push_back(inst.b[i] / g);
      if (!seen.emplace(std::move(key), true).second) continue;
      LpRow row;
      for (Eigen::Index j = 0; j < n; ++j)
        if (inst.a(i, j) != 0) row.terms.emplace_back(static_cast<int>(j), Rat(inst.a(i, j) / g));
      row.sense = RowSense::le;
      row.rhs = Rat(inst.b[i] / g);
      ef.rows.push_back({std::move(row), "facet"});
    }
    art.size.apex_facet_bound = 4 * static_cast<long>(n) * static_cast<long>(n) * delta * delta;
    if (static_cast<long>(ef.rows.size()) > art.size.apex_facet_bound)
      throw std::logic_error("apex description exceeds its facet-count bound");
    art.size.disjunction_inequality_bound = art.size.apex_facet_bound;
  } else {
    // Nontrivial coset: congruency circulations over the realized graph.
    art.branch = Branch::circulation;
    const GraphRealization& g = *adm.realization;
    const SignFix fix = sign_fix(sys.r.leftCols(n), g);
    const IntMatrix d = incidence_matrix(g, fix);
    IntMatrix w = IntMatrix::Zero(n, m);
    w.leftCols(n) = IntMatrix::Identity(n, n);
    const IntVector f = sys.b.head(n);
    const ExtendedFormulation inner =
        circulation_ef(d, w, sys.h, f, limits.delta_cap, limits.assignment_cap);

    const int y_offset = static_cast<int>(n);
    const int inner_offset = static_cast<int>(n + m);
    ef.num_vars = inner_offset + inner.num_vars;
    ef.blocks.push_back({"y", y_offset, static_cast<int>(m)});
    for (const auto& blk : inner.blocks)
      ef.blocks.push_back({"layered:" + blk.name, inner_offset + blk.offset, blk.size});

    append_link_rows(ef, inst.a, sys, y_offset);
    for (Eigen::Index i = 0; i < m; ++i) {
      LpRow row;
      row.terms.emplace_back(y_offset + static_cast<int>(i), Rat(1));
      for (Eigen::Index j = 0; j < inner.projection.cols(); ++j)
        if (inner.projection(i, j) != 0)
          row.terms.emplace_back(inner_offset + static_cast<int>(j), -inner.projection(i, j));
      row.rhs = inner.projection_offset[i];
      ef.rows.push_back({std::move(row), "project"});
    }
    for (const auto& fr : inner.rows) {
      LpRow row;
      row.sense = fr.row.sense;
      row.rhs = fr.row.rhs;
      for (const auto& [var, coeff] : fr.row.terms)
        row.terms.emplace_back(inner_offset + var, coeff);
      ef.rows.push_back({std::move(row), fr.tag});
    }
    art.size.linking_rows = 2 * static_cast<long>(m);
    art.size.layered_arcs = delta * static_cast<long>(m);
    art.size.disjunction_inequality_bound = inner.declared_inequality_bound;
  }

  ef.projection = RatMatrix::Zero(n, ef.num_vars);
  for (Eigen::Index j = 0; j < n; ++j) ef.projection(j, j) = Rat(1);
  ef.projection_offset = RatVector::Zero(n);
  ef.declared_inequality_bound = art.size.disjunction_inequality_bound;

  fill_size_counts(art);
  if (art.size.total_rows > art.size.polynomial_bound)
    throw std::logic_error("formulation exceeds the polynomial size bound");
  return art;
}

ExtendedFormulation stab_box_intersect(const EfArtifact& art) {
  ExtendedFormulation ef = art.formulation;
  const Eigen::Index n = ef.projection.rows();
  for (Eigen::Index j = 0; j < n; ++j) {
    LpRow lower;
    lower.terms.emplace_back(static_cast<int>(j), Rat(1));
    lower.sense = RowSense::ge;
    ef.rows.push_back({std::move(lower), "box"});
    LpRow upper;
    upper.terms.emplace_back(static_cast<int>(j), Rat(1));
    upper.sense = RowSense::le;
    upper.rhs = Rat(1);
    ef.rows.push_back({std::move(upper), "box"});
  }
  return ef;
}

}  // namespace deltaef
