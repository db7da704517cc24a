#include "deltaef/linalg.hpp"

#include <vector>

namespace deltaef {

Int det_exact(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const Eigen::Index n = m.rows();
  if (n == 0) return Int(1);
  IntMatrix a = m;
  Int prev(1);
  int sign = 1;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      Eigen::Index p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return Int(0);
      a.row(k).swap(a.row(p));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      for (Eigen::Index j = k + 1; j < n; ++j) {
        // Bareiss: the division by the previous pivot is exact.
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign > 0 ? a(n - 1, n - 1) : Int(-a(n - 1, n - 1));
}

namespace {

// Row echelon over the rationals; returns the pivot count.
Eigen::Index echelon_rank(RatMatrix& a) {
  const Eigen::Index rows = a.rows(), cols = a.cols();
  Eigen::Index rank = 0;
  for (Eigen::Index c = 0; c < cols && rank < rows; ++c) {
    Eigen::Index p = rank;
    while (p < rows && a(p, c) == 0) ++p;
    if (p == rows) continue;
    a.row(rank).swap(a.row(p));
    const Rat piv = a(rank, c);
    for (Eigen::Index i = rank + 1; i < rows; ++i) {
      if (a(i, c) == 0) continue;
      const Rat f = a(i, c) / piv;
      for (Eigen::Index j = c; j < cols; ++j) a(i, j) -= f * a(rank, j);
      a(i, c) = 0;
    }
    ++rank;
  }
  return rank;
}

}  // namespace

Eigen::Index rank_exact(const RatMatrix& m) {
  RatMatrix a = m;
  return echelon_rank(a);
}

Eigen::Index rank_exact(const IntMatrix& m) { return rank_exact(to_rat(m)); }

bool is_unimodular(const IntMatrix& m) {
  if (m.rows() != m.cols()) return false;
  const Int d = det_exact(m);
  return d == 1 || d == -1;
}

std::optional<RatVector> solve_exact(const RatMatrix& a, const RatVector& b) {
  if (a.rows() != b.size()) throw std::invalid_argument("solve_exact: dimension mismatch");
  const Eigen::Index rows = a.rows(), cols = a.cols();
  RatMatrix t(rows, cols + 1);
  t.leftCols(cols) = a;
  t.col(cols) = b;
  std::vector<Eigen::Index> pivot_col;
  Eigen::Index rank = 0;
  for (Eigen::Index c = 0; c < cols && rank < rows; ++c) {
    Eigen::Index p = rank;
    while (p < rows && t(p, c) == 0) ++p;
    if (p == rows) continue;
    t.row(rank).swap(t.row(p));
    const Rat piv = t(rank, c);
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == rank || t(i, c) == 0) continue;
      const Rat f = t(i, c) / piv;
      for (Eigen::Index j = c; j <= cols; ++j) t(i, j) -= f * t(rank, j);
      t(i, c) = 0;
    }
    pivot_col.push_back(c);
    ++rank;
  }
  for (Eigen::Index i = rank; i < rows; ++i)
    if (t(i, cols) != 0) return std::nullopt;
  RatVector x = RatVector::Zero(cols);
  for (Eigen::Index r = 0; r < rank; ++r) x[pivot_col[r]] = t(r, cols) / t(r, pivot_col[r]);
  return x;
}

std::optional<RatVector> solve_exact(const IntMatrix& a, const IntVector& b) {
  return solve_exact(to_rat(a), to_rat(b));
}

RatMatrix kernel_basis(const RatMatrix& a) {
  const Eigen::Index rows = a.rows(), cols = a.cols();
  RatMatrix t = a;
  std::vector<Eigen::Index> pivot_col;
  Eigen::Index rank = 0;
  for (Eigen::Index c = 0; c < cols && rank < rows; ++c) {
    Eigen::Index p = rank;
    while (p < rows && t(p, c) == 0) ++p;
    if (p == rows) continue;
    t.row(rank).swap(t.row(p));
    const Rat piv = t(rank, c);
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == rank || t(i, c) == 0) continue;
      const Rat f = t(i, c) / piv;
      for (Eigen::Index j = c; j < cols; ++j) t(i, j) -= f * t(rank, j);
      t(i, c) = 0;
    }
    pivot_col.push_back(c);
    ++rank;
  }
  std::vector<bool> is_pivot(cols, false);
  for (Eigen::Index c : pivot_col) is_pivot[c] = true;
  RatMatrix basis(cols, cols - rank);
  Eigen::Index k = 0;
  for (Eigen::Index c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    RatVector v = RatVector::Zero(cols);
    v[c] = 1;
    for (Eigen::Index r = 0; r < rank; ++r) v[pivot_col[r]] = -t(r, c) / t(r, pivot_col[r]);
    basis.col(k++) = v;
  }
  return basis;
}

std::optional<RatMatrix> inverse_exact(const RatMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("inverse of non-square matrix");
  const Eigen::Index n = a.rows();
  RatMatrix t(n, 2 * n);
  t.leftCols(n) = a;
  t.rightCols(n) = RatMatrix::Identity(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index p = c;
    while (p < n && t(p, c) == 0) ++p;
    if (p == n) return std::nullopt;
    t.row(c).swap(t.row(p));
    const Rat piv = t(c, c);
    for (Eigen::Index j = c; j < 2 * n; ++j) t(c, j) /= piv;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == c || t(i, c) == 0) continue;
      const Rat f = t(i, c);
      for (Eigen::Index j = c; j < 2 * n; ++j) t(i, j) -= f * t(c, j);
    }
  }
  return RatMatrix(t.rightCols(n));
}

Int row_denominator_lcm(const RatMatrix& m, Eigen::Index row) {
  Int l(1);
  for (Eigen::Index j = 0; j < m.cols(); ++j) l = int_lcm(l, denominator(m(row, j)));
  return l;
}

bool entries_in_zero_pm_one(const IntMatrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const Int& v = m(i, j);
      if (v != 0 && v != 1 && v != -1) return false;
    }
  return true;
}

}  // namespace deltaef
