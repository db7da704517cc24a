#include "deltaef/hnf.hpp"

#include <stdexcept>

#include "deltaef/cosets.hpp"
#include "deltaef/linalg.hpp"

namespace deltaef {

namespace {

// g = gcd(a, b) with p a + q b = g; g > 0 unless a = b = 0.
Int xgcd(const Int& a, const Int& b, Int& p, Int& q) {
  Int old_r = a, r = b;
  Int old_s = 1, s = 0;
  Int old_t = 0, t = 1;
  while (r != 0) {
    const Int quot = old_r / r;  // truncated division is fine for gcd descent
    Int tmp = old_r - quot * r;
    old_r = r;
    r = tmp;
    tmp = old_s - quot * s;
    old_s = s;
    s = tmp;
    tmp = old_t - quot * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  p = old_s;
  q = old_t;
  return old_r;
}

Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

}  // namespace

HnfDecomposition hermite_decompose(const IntMatrix& a) {
  const Eigen::Index m = a.rows(), n = a.cols();
  if (m < n) throw std::invalid_argument("matrix has fewer rows than columns");
  IntMatrix t = a;
  IntMatrix e = IntMatrix::Identity(m, m);

  auto combine = [&](Eigen::Index i, Eigen::Index k, Eigen::Index col) {
    // Unimodular 2x2 row operation zeroing t(k, col).
    Int p, q;
    const Int av = t(i, col), bv = t(k, col);
    const Int g = xgcd(av, bv, p, q);
    const IntMatrix ti = t.row(i), tk = t.row(k);
    const IntMatrix ei = e.row(i), ek = e.row(k);
    t.row(i) = p * ti + q * tk;
    t.row(k) = (-(bv / g)) * ti + (av / g) * tk;
    e.row(i) = p * ei + q * ek;
    e.row(k) = (-(bv / g)) * ei + (av / g) * ek;
  };

  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index first = -1;
    for (Eigen::Index i = c; i < m; ++i) {
      if (t(i, c) == 0) continue;
      if (first < 0) first = i;
      else combine(first, i, c);
    }
    if (first < 0) throw std::invalid_argument("matrix is rank deficient");
    if (first != c) {
      t.row(first).swap(t.row(c));
      e.row(first).swap(e.row(c));
    }
    if (t(c, c) < 0) {
      t.row(c) = -t.row(c);
      e.row(c) = -e.row(c);
    }
    for (Eigen::Index i = 0; i < c; ++i) {
      const Int f = floor_div(t(i, c), t(c, c));
      if (f != 0) {
        t.row(i) -= f * t.row(c);
        e.row(i) -= f * e.row(c);
      }
    }
  }

  HnfDecomposition out;
  out.h = t.topRows(n);
  out.u = e.topRows(n);
  out.r = e.bottomRows(m - n);
  out.gcd_abs = 1;
  for (Eigen::Index i = 0; i < n; ++i) out.gcd_abs *= out.h(i, i);

  if (!is_unimodular(e)) throw std::logic_error("row operation accumulator is not unimodular");
  if (t.bottomRows(m - n) != IntMatrix::Zero(m - n, n))
    throw std::logic_error("elimination left nonzero rows below the Hermite block");
  if (e * a != t) throw std::logic_error("accumulator does not reproduce the elimination");
  return out;
}

CongruentSystem reformulate(const ProblemInstance& inst, const HnfDecomposition& hnf,
                            const BasisSplit& split) {
  const Eigen::Index m = inst.a.rows(), n = inst.a.cols();
  if (!solve_exact(to_rat(inst.a), to_rat(inst.b)).has_value())
    throw std::invalid_argument("b not in span");

  const auto inv = inverse_exact(to_rat(split.a_basis));
  if (!inv) throw std::invalid_argument("basis block singular");
  const RatMatrix s = -to_rat(split.a_nonbasis) * (*inv);
  IntMatrix s_int(s.rows(), s.cols());
  for (Eigen::Index i = 0; i < s.rows(); ++i)
    for (Eigen::Index j = 0; j < s.cols(); ++j) {
      if (!is_integer(s(i, j))) throw std::invalid_argument("R not integral");
      s_int(i, j) = numerator(s(i, j));
    }

  CongruentSystem sys;
  sys.h = split.a_basis;
  sys.row_order = split.basis_rows;
  sys.row_order.insert(sys.row_order.end(), split.nonbasis_rows.begin(),
                       split.nonbasis_rows.end());
  sys.b.resize(m);
  for (Eigen::Index i = 0; i < m; ++i) sys.b[i] = inst.b[sys.row_order[i]];

  sys.u = IntMatrix::Zero(n, m);
  sys.u.leftCols(n) = IntMatrix::Identity(n, n);
  sys.r = IntMatrix::Zero(m - n, m);
  sys.r.leftCols(n) = s_int;
  sys.r.rightCols(m - n) = IntMatrix::Identity(m - n, m - n);

  if (hnf.gcd_abs == 1) {
    sys.mode = SystemMode::pure_cone;
    sys.target_coset = 0;
  } else {
    sys.mode = SystemMode::congruency;
    const CosetSystem cs = coset_representatives(split.a_basis, hnf.gcd_abs);
    sys.target_coset = cs.classify(sys.b.head(n));
  }
  return sys;
}

RatVector lift_back(const RatVector& y, const CongruentSystem& sys) {
  const Eigen::Index m = sys.b.size(), n = sys.h.rows();
  if (y.size() != m) throw std::invalid_argument("slack vector dimension mismatch");
  const RatVector diff = y - to_rat(sys.b);
  const RatVector rres = to_rat(sys.r) * diff;
  for (Eigen::Index i = 0; i < rres.size(); ++i)
    if (rres[i] != 0) throw std::invalid_argument("slack vector violates the kernel rows");
  const RatVector top = -diff.head(n);  // U (b - y) with U = [I 0]
  const auto inv = inverse_exact(to_rat(sys.h));
  return (*inv) * top;
}

}  // namespace deltaef
