#include "deltaef/cosets.hpp"

#include <algorithm>
#include <stdexcept>

#include "deltaef/errors.hpp"
#include "deltaef/hnf.hpp"
#include "deltaef/linalg.hpp"

namespace deltaef {

int CosetSystem::classify(const IntVector& v) const {
  const IntVector r = reduce(v);
  const auto it = index_.find(std::vector<Int>(r.data(), r.data() + r.size()));
  if (it == index_.end()) throw std::logic_error("coset reduction left the parallelepiped");
  return it->second;
}

IntVector CosetSystem::reduce(const IntVector& v) const {
  if (v.size() != h.rows()) throw std::invalid_argument("coset vector dimension mismatch");
  const RatVector t = h_inv_ * to_rat(v);
  IntVector w(t.size());
  for (Eigen::Index i = 0; i < t.size(); ++i) w[i] = rat_floor(t[i]);
  return v - h * w;
}

CosetSystem coset_representatives(const IntMatrix& h, const Int& delta_cap) {
  if (h.rows() != h.cols()) throw std::invalid_argument("coset matrix must be square");
  const Eigen::Index d = h.rows();
  Int det = det_exact(h);
  if (det == 0) throw std::invalid_argument("coset matrix is singular");
  if (det < 0) det = -det;
  if (det > delta_cap) throw CapExceededError("coset count exceeds the delta cap");

  CosetSystem cs;
  cs.h = h;
  cs.delta = det;
  cs.h_inv_ = *inverse_exact(to_rat(h));

  // H and the column-style Hermite form of H generate the same lattice, and
  // for a triangular T the diagonal box {y : 0 <= y_i < T_ii} is a transversal
  // of Z^d / TZ^d. Reducing its |det| points through H's parallelepiped
  // therefore lands on every representative exactly once.
  const IntMatrix tri = hermite_decompose(h.transpose()).h.transpose();
  IntVector y = IntVector::Zero(d);
  while (true) {
    cs.reps.push_back(cs.reduce(y));
    Eigen::Index k = d - 1;
    while (k >= 0) {
      y[k] += 1;
      if (y[k] < tri(k, k)) break;
      y[k] = 0;
      --k;
    }
    if (k < 0) break;
  }
  std::sort(cs.reps.begin(), cs.reps.end(), [](const IntVector& a, const IntVector& b) {
    for (Eigen::Index i = 0; i < a.size(); ++i)
      if (a[i] != b[i]) return a[i] < b[i];
    return false;
  });

  // The origin leads; the scan above emitted the rest in lex order.
  for (std::size_t i = 0; i < cs.reps.size(); ++i) {
    if (cs.reps[i] == IntVector::Zero(d)) {
      std::rotate(cs.reps.begin(), cs.reps.begin() + static_cast<std::ptrdiff_t>(i),
                  cs.reps.begin() + static_cast<std::ptrdiff_t>(i) + 1);
      break;
    }
  }
  if (Int(static_cast<long>(cs.reps.size())) != cs.delta)
    throw std::logic_error("coset enumeration count disagrees with the determinant");
  for (std::size_t i = 0; i < cs.reps.size(); ++i) {
    std::vector<Int> key(cs.reps[i].data(), cs.reps[i].data() + d);
    cs.index_.emplace(std::move(key), static_cast<int>(i));
  }

  const int n = static_cast<int>(cs.reps.size());
  cs.add_table.assign(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      cs.add_table[i][j] = cs.classify(cs.reps[static_cast<std::size_t>(i)] +
                                       cs.reps[static_cast<std::size_t>(j)]);
  return cs;
}

}  // namespace deltaef
