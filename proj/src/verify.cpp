#include "deltaef/verify.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "deltaef/errors.hpp"
#include "deltaef/linalg.hpp"

namespace deltaef {

namespace {

constexpr long kObjectiveRange = 5;        // objective entries drawn from [-range, range]
constexpr long kDrawFactor = 400;          // sampling stops after factor * requested draws
const Int kLongSafe = Int(1) << 62;        // headroom for incremental int64 accumulation

struct Box {
  IntVector lo, hi;
  bool empty = false;
};

// Integer bounding box of the radius ball around the apex (the unique
// solution of Ax = b).
Box box_around_apex(const ProblemInstance& inst, long radius) {
  const auto apex = solve_exact(inst.a, inst.b);
  if (!apex) throw std::invalid_argument("lattice enumeration needs b inside the column span of A");
  const Eigen::Index n = inst.a.cols();
  Box box;
  box.lo.resize(n);
  box.hi.resize(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    box.lo[j] = rat_ceil((*apex)[j] - radius);
    box.hi[j] = rat_floor((*apex)[j] + radius);
    if (box.hi[j] < box.lo[j]) box.empty = true;
  }
  return box;
}

// Odometer over [lo, hi] in lexicographic order, keeping Ax current column by
// column so each visited point costs O(rows) instead of a full multiply.
// Emits every point with Ax <= b.
template <typename Scalar, typename Emit>
void scan_box(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& a,
              const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& b,
              const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& lo,
              const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& hi, Emit&& emit) {
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const Eigen::Index n = a.cols(), m = a.rows();
  Vec x = lo;
  Vec ax = a * x;
  while (true) {
    bool feasible = true;
    for (Eigen::Index i = 0; i < m && feasible; ++i) feasible = ax[i] <= b[i];
    if (feasible) emit(x);
    Eigen::Index k = n - 1;
    while (k >= 0 && x[k] == hi[k]) {
      ax += a.col(k) * (lo[k] - x[k]);
      x[k] = lo[k];
      --k;
    }
    if (k < 0) break;
    x[k] += Scalar(1);
    ax += a.col(k);
  }
}

Int int_abs(const Int& v) { return v < 0 ? Int(-v) : v; }

Int int_pow(Int base, long exp) {
  Int out = 1;
  for (long e = 0; e < exp; ++e) out *= base;
  return out;
}

std::string describe(const LpResult& res, const Rat& shift) {
  switch (res.status) {
    case LpStatus::optimal:
      return "optimal " + rat_to_string(res.value + shift);
    case LpStatus::unbounded:
      return "unbounded";
    case LpStatus::infeasible:
      return "infeasible";
  }
  return "unknown";
}

RatVector projection_offset_or_zero(const ExtendedFormulation& ef) {
  if (ef.projection_offset.size() == ef.projection.rows()) return ef.projection_offset;
  return RatVector::Zero(ef.projection.rows());
}

// Rows pinning the projected coordinates; appended to a model so a context
// can sweep the right-hand side over points or directions.
std::vector<int> append_projection_pins(LpModel& model, const ExtendedFormulation& ef) {
  std::vector<int> pins;
  for (Eigen::Index i = 0; i < ef.projection.rows(); ++i) {
    LpRow row;
    for (Eigen::Index j = 0; j < ef.projection.cols(); ++j)
      if (ef.projection(i, j) != 0) row.terms.emplace_back(static_cast<int>(j), ef.projection(i, j));
    row.sense = RowSense::eq;
    row.rhs = Rat(0);
    pins.push_back(static_cast<int>(model.rows.size()));
    model.rows.push_back(std::move(row));
  }
  return pins;
}

}  // namespace

std::vector<IntVector> enumerate_lattice_points(const ProblemInstance& inst, long radius,
                                                long cap) {
  if (radius < 0) throw std::invalid_argument("enumeration radius must be nonnegative");
  const Box box = box_around_apex(inst, radius);
  if (box.empty) return {};
  const Eigen::Index m = inst.a.rows(), n = inst.a.cols();

  Int volume = 1;
  for (Eigen::Index j = 0; j < n; ++j) volume *= box.hi[j] - box.lo[j] + 1;
  if (volume * Int(static_cast<long>(n)) > Int(cap))
    throw CapExceededError("lattice enumeration exceeds the configured cap");

  // Worst partial sum over the box decides whether int64 arithmetic is safe.
  Int worst = 0;
  for (Eigen::Index i = 0; i < m; ++i) {
    Int row_sum = int_abs(inst.b[i]);
    for (Eigen::Index j = 0; j < n; ++j)
      row_sum += int_abs(inst.a(i, j)) * std::max(int_abs(box.lo[j]), int_abs(box.hi[j]));
    worst = std::max(worst, row_sum);
  }

  std::vector<IntVector> out;
  if (worst < kLongSafe) {
    using LongMatrix = Eigen::Matrix<long, Eigen::Dynamic, Eigen::Dynamic>;
    using LongVector = Eigen::Matrix<long, Eigen::Dynamic, 1>;
    LongMatrix a(m, n);
    LongVector b(m), lo(n), hi(n);
    for (Eigen::Index i = 0; i < m; ++i) {
      b[i] = inst.b[i].convert_to<long>();
      for (Eigen::Index j = 0; j < n; ++j) a(i, j) = inst.a(i, j).convert_to<long>();
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      lo[j] = box.lo[j].convert_to<long>();
      hi[j] = box.hi[j].convert_to<long>();
    }
    scan_box<long>(a, b, lo, hi, [&](const LongVector& x) {
      IntVector p(n);
      for (Eigen::Index j = 0; j < n; ++j) p[j] = Int(x[j]);
      out.push_back(std::move(p));
    });
  } else {
    scan_box<Int>(inst.a, inst.b, box.lo, box.hi,
                  [&](const IntVector& x) { out.push_back(x); });
  }
  return out;  // odometer order is lexicographic by construction
}

VerificationReport verify_hull(const EfArtifact& art, const ProblemInstance& inst, long radius,
                               long num_objectives, unsigned long seed, long enum_cap) {
  VerificationReport rep;
  rep.label = art.label.empty() ? inst.label : art.label;
  const ExtendedFormulation& ef = art.formulation;
  const Eigen::Index m = inst.a.rows(), n = inst.a.cols();
  if (ef.projection.rows() != n)
    throw std::invalid_argument("artifact projection does not match the instance dimension");

  const std::vector<IntVector> lattice = enumerate_lattice_points(inst, radius, enum_cap);
  const Box box = box_around_apex(inst, radius);
  rep.lattice_points = static_cast<long>(lattice.size());
  rep.hull_empty = lattice.empty();

  const LpModel base = to_lp_model(ef);
  const RatVector offset = projection_offset_or_zero(ef);

  // (a) membership: every enumerated point admits a feasible lift.
  if (!rep.hull_empty) {
    LpModel pinned = base;
    const std::vector<int> pins = append_projection_pins(pinned, ef);
    LpContext ctx(pinned, pins);
    for (const IntVector& p : lattice) {
      RatVector rhs(n);
      for (Eigen::Index i = 0; i < n; ++i) rhs[i] = Rat(p[i]) - offset[i];
      ++rep.membership_checked;
      if (ctx.feasible_with_rhs(rhs).status != LpStatus::optimal)
        rep.membership_failures.push_back(p);
    }
  }

  // (b) optimality under seeded integer objectives, restricted to objectives
  // bounded over the instance cone: -c must be a nonnegative combination of
  // the rows of A.
  std::mt19937_64 rng(seed);
  const auto draw = [&rng, n] {
    IntVector c(n);
    for (Eigen::Index j = 0; j < n; ++j)
      c[j] = Int(static_cast<long>(rng() % (2 * kObjectiveRange + 1)) - kObjectiveRange);
    return c;
  };
  const auto touches_boundary = [&box, n](const IntVector& p) {
    for (Eigen::Index j = 0; j < n; ++j)
      if (p[j] == box.lo[j] || p[j] == box.hi[j]) return true;
    return false;
  };

  if (rep.hull_empty) {
    // Feasibility is objective-independent: an empty hull demands an
    // infeasible formulation, once and for all objectives.
    if (LpContext(base).feasible().status == LpStatus::infeasible) {
      rep.objectives_tested = num_objectives;
      rep.matches = num_objectives;
    } else {
      LpContext ef_ctx(base);
      for (long t = 0; t < num_objectives; ++t) {
        const IntVector c = draw();
        ++rep.objectives_tested;
        RatVector lifted = RatVector::Zero(ef.num_vars);
        Rat shift(0);
        for (Eigen::Index i = 0; i < n; ++i) {
          shift += Rat(c[i]) * offset[i];
          for (Eigen::Index j = 0; j < ef.num_vars; ++j)
            lifted[j] += Rat(c[i]) * ef.projection(i, j);
        }
        rep.mismatches.push_back({c, describe(ef_ctx.minimize(lifted), shift), "infeasible"});
      }
    }
  } else {
    LpModel cone;
    cone.num_vars = static_cast<int>(m);
    cone.nonneg.assign(static_cast<std::size_t>(m), true);
    std::vector<int> cone_pins;
    for (Eigen::Index j = 0; j < n; ++j) {
      LpRow row;
      for (Eigen::Index i = 0; i < m; ++i)
        if (inst.a(i, j) != 0) row.terms.emplace_back(static_cast<int>(i), Rat(inst.a(i, j)));
      row.sense = RowSense::eq;
      row.rhs = Rat(0);
      cone_pins.push_back(static_cast<int>(cone.rows.size()));
      cone.rows.push_back(std::move(row));
    }
    LpContext cone_ctx(cone, cone_pins);
    LpContext ef_ctx(base);

    long draws = 0;
    while (rep.objectives_tested < num_objectives && draws < kDrawFactor * num_objectives) {
      ++draws;
      const IntVector c = draw();
      RatVector neg(n);
      for (Eigen::Index j = 0; j < n; ++j) neg[j] = Rat(-c[j]);
      if (cone_ctx.feasible_with_rhs(neg).status != LpStatus::optimal) {
        ++rep.objectives_skipped;
        continue;
      }
      ++rep.objectives_tested;

      Int best = 0;
      bool first = true, boundary = false;
      for (const IntVector& p : lattice) {
        Int value = 0;
        for (Eigen::Index j = 0; j < n; ++j) value += c[j] * p[j];
        if (first || value < best) {
          best = value;
          boundary = touches_boundary(p);
          first = false;
        } else if (value == best && touches_boundary(p)) {
          boundary = true;
        }
      }

      RatVector lifted = RatVector::Zero(ef.num_vars);
      Rat shift(0);
      for (Eigen::Index i = 0; i < n; ++i) {
        shift += Rat(c[i]) * offset[i];
        for (Eigen::Index j = 0; j < ef.num_vars; ++j)
          lifted[j] += Rat(c[i]) * ef.projection(i, j);
      }
      const LpResult res = ef_ctx.minimize(lifted);

      std::string ef_outcome = describe(res, shift);
      bool match = res.status == LpStatus::optimal && res.value + shift == Rat(best);
      if (match) {
        // The optimum must also project into the instance polyhedron.
        const RatVector x = project_point(ef, res.point);
        for (Eigen::Index i = 0; i < m && match; ++i) {
          Rat lhs(0);
          for (Eigen::Index j = 0; j < n; ++j) lhs += Rat(inst.a(i, j)) * x[j];
          if (lhs > Rat(inst.b[i])) {
            match = false;
            ef_outcome += ", but the projected optimum violates Ax <= b";
          }
        }
      }
      if (match) {
        ++rep.matches;
        if (boundary) rep.radius_boundary_active = true;
      } else {
        rep.mismatches.push_back({c, std::move(ef_outcome), "optimal " + best.str()});
      }
    }
    if (rep.objectives_tested == 0) rep.inconclusive = true;
  }

  // (c) recession agreement along every signed coordinate direction: d is a
  // recession direction of {Ax <= b} exactly when Ad <= 0, and the
  // homogenized formulation pinned to d must agree.
  if (!rep.hull_empty) {
    LpModel hom = base;
    for (LpRow& row : hom.rows) row.rhs = Rat(0);
    const std::vector<int> pins = append_projection_pins(hom, ef);
    LpContext hom_ctx(hom, pins);
    for (Eigen::Index j = 0; j < n; ++j) {
      for (int sign : {1, -1}) {
        ++rep.ray_checks;
        bool cone_dir = true;
        for (Eigen::Index i = 0; i < m && cone_dir; ++i)
          cone_dir = Int(sign) * inst.a(i, j) <= 0;
        RatVector rhs = RatVector::Zero(n);
        rhs[j] = Rat(sign);
        const bool ef_dir = hom_ctx.feasible_with_rhs(rhs).status == LpStatus::optimal;
        if (cone_dir != ef_dir) ++rep.ray_failures;
      }
    }
  }

  rep.pass = rep.membership_failures.empty() && rep.mismatches.empty() &&
             rep.ray_failures == 0 && !rep.inconclusive;

  std::ostringstream os;
  os << (rep.label.empty() ? "instance" : rep.label) << ": " << rep.lattice_points
     << " lattice points";
  if (rep.hull_empty) os << " (empty hull within the radius)";
  os << ", memberships " << (rep.membership_checked - static_cast<long>(rep.membership_failures.size()))
     << "/" << rep.membership_checked << ", objective optima equal "
     << rep.matches << "/" << rep.objectives_tested << " (" << rep.objectives_skipped
     << " skipped as unbounded), rays " << (rep.ray_checks - rep.ray_failures) << "/"
     << rep.ray_checks;
  if (rep.radius_boundary_active) os << ", an optimum touches the enumeration boundary";
  if (rep.inconclusive) os << ", inconclusive: no bounded objective sampled";
  os << "; " << (rep.pass ? "pass" : "fail");
  rep.summary = os.str();
  return rep;
}

SizeCheck verify_size_bound(const EfArtifact& art) {
  SizeCheck out;
  const SizeMetadata& sz = art.size;
  const Eigen::Index n = art.formulation.projection.rows();
  const Eigen::Index m = art.system.r.cols();
  const Int delta = int_abs(det_exact(art.system.h));
  const long delta_l = delta.convert_to<long>();

  Int bound = 0;
  long counted = 0;
  std::ostringstream detail;
  switch (art.branch) {
    case Branch::pure_cone:
      counted = sz.total_rows;
      bound = Int(3) * static_cast<long>(m) - static_cast<long>(n);
      detail << "cone description: " << m << " linking rows, " << (m - n)
             << " kernel equations, " << m << " nonnegativity rows";
      break;
    case Branch::apex: {
      counted = sz.total_rows;
      bound = Int(4) * static_cast<long>(n) * static_cast<long>(n) * delta * delta;
      detail << "facet description within 4 n^2 delta^2 = " << bound.str();
      break;
    }
    case Branch::circulation: {
      const int nodes = art.realization ? art.realization->node_count : sz.base_nodes;
      const Int fbar = int_pow(delta - 1, delta_l - 1);
      const Int tau_choices = int_pow(Int(nodes), delta_l - 1);
      const Int layered = delta * static_cast<long>(m);
      const Int inner = fbar * tau_choices * (Int(1) + delta * layered);
      counted = sz.inequality_rows + sz.linking_rows;
      bound = inner + Int(sz.linking_rows);
      detail << "disjunction inequalities " << sz.inequality_rows << " within " << inner.str()
             << ", plus " << sz.linking_rows << " linking rows";
      break;
    }
  }

  const Int poly = Int(kPolynomialSizeConstant) * int_pow(Int(static_cast<long>(n)), delta_l);
  out.rows_counted = counted;
  out.row_bound = bound > Int(std::numeric_limits<long>::max())
                      ? std::numeric_limits<long>::max()
                      : bound.convert_to<long>();
  out.ok = Int(counted) <= bound && Int(sz.total_rows) <= poly;
  out.detail = detail.str();
  return out;
}

}  // namespace deltaef
