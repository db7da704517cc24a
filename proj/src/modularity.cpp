#include "deltaef/modularity.hpp"

#include <stdexcept>

#include "deltaef/errors.hpp"
#include "deltaef/linalg.hpp"

namespace deltaef {

namespace {

// binomial(m, n) saturated at cap + 1 to keep the guard overflow-free.
long binomial_capped(long m, long n, long cap) {
  if (n < 0 || n > m) return 0;
  n = std::min(n, m - n);
  long out = 1;
  for (long i = 1; i <= n; ++i) {
    if (out > cap) return cap + 1;
    out = out * (m - n + i) / i;
  }
  return std::min(out, cap + 1);
}

// Visits all ascending index tuples of size k from {0..m-1}.
template <typename F>
void for_each_combination(Eigen::Index m, Eigen::Index k, F&& visit) {
  if (k > m) return;
  std::vector<Eigen::Index> comb(static_cast<std::size_t>(k));
  for (Eigen::Index i = 0; i < k; ++i) comb[static_cast<std::size_t>(i)] = i;
  while (true) {
    visit(comb);
    Eigen::Index j = k - 1;
    while (j >= 0 && comb[static_cast<std::size_t>(j)] == m - k + j) --j;
    if (j < 0) break;
    ++comb[static_cast<std::size_t>(j)];
    for (Eigen::Index t = j + 1; t < k; ++t)
      comb[static_cast<std::size_t>(t)] = comb[static_cast<std::size_t>(t - 1)] + 1;
  }
}

IntMatrix select_rows(const IntMatrix& a, const std::vector<Eigen::Index>& rows) {
  IntMatrix out(static_cast<Eigen::Index>(rows.size()), a.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = a.row(rows[i]);
  return out;
}

}  // namespace

ModularityProfile subdeterminant_profile(const IntMatrix& a, long cap) {
  const Eigen::Index m = a.rows(), n = a.cols();
  if (m < n) throw std::invalid_argument("matrix has fewer rows than columns");
  if (binomial_capped(static_cast<long>(m), static_cast<long>(n), cap) > cap)
    throw CapExceededError("subdeterminant enumeration exceeds cap");

  ModularityProfile profile;
  bool mixed_magnitudes = false;
  for_each_combination(m, n, [&](const std::vector<Eigen::Index>& comb) {
    Int d = det_exact(select_rows(a, comb));
    if (d < 0) d = -d;
    if (d == 0) return;
    profile.gcd = int_gcd(profile.gcd, d);
    if (d > profile.delta) {
      if (profile.delta > 0) mixed_magnitudes = true;
      profile.delta = d;
      profile.witness_basis = comb;
    } else if (d != profile.delta) {
      mixed_magnitudes = true;
    }
  });
  if (profile.delta == 0) throw std::invalid_argument("matrix is rank deficient");
  profile.strictly_modular = !mixed_magnitudes;
  return profile;
}

BasisSplit find_basis(const IntMatrix& a, const ModularityProfile& profile) {
  const Eigen::Index m = a.rows(), n = a.cols();
  BasisSplit split;
  RatMatrix chosen(0, n);
  for (Eigen::Index r = 0; r < m; ++r) {
    if (static_cast<Eigen::Index>(split.basis_rows.size()) == n) {
      split.nonbasis_rows.push_back(r);
      continue;
    }
    RatMatrix trial(chosen.rows() + 1, n);
    trial.topRows(chosen.rows()) = chosen;
    trial.row(chosen.rows()) = a.row(r).cast<Rat>();
    if (rank_exact(trial) == trial.rows()) {
      chosen = std::move(trial);
      split.basis_rows.push_back(r);
    } else {
      split.nonbasis_rows.push_back(r);
    }
  }
  if (static_cast<Eigen::Index>(split.basis_rows.size()) != n)
    throw std::invalid_argument("matrix is rank deficient");
  split.a_basis = select_rows(a, split.basis_rows);
  split.a_nonbasis = select_rows(a, split.nonbasis_rows);
  Int d = det_exact(split.a_basis);
  if (d < 0) d = -d;
  if (d != profile.delta)
    throw std::logic_error("greedy basis does not realize the profile determinant");
  return split;
}

bool is_totally_unimodular(const IntMatrix& m, long cap) {
  if (!entries_in_zero_pm_one(m)) return false;
  const Eigen::Index r = m.rows(), c = m.cols();
  long total = 0;
  for (Eigen::Index k = 2; k <= std::min(r, c); ++k) {
    const long rk = binomial_capped(static_cast<long>(r), static_cast<long>(k), cap);
    const long ck = binomial_capped(static_cast<long>(c), static_cast<long>(k), cap);
    total += rk * ck;  // each factor <= cap + 1, no overflow in 64 bits
    if (total > cap) throw CapExceededError("minor enumeration exceeds cap");
  }
  for (Eigen::Index k = 2; k <= std::min(r, c); ++k) {
    bool ok = true;
    for_each_combination(r, k, [&](const std::vector<Eigen::Index>& rows) {
      if (!ok) return;
      const IntMatrix sub_rows = select_rows(m, rows);
      for_each_combination(c, k, [&](const std::vector<Eigen::Index>& cols) {
        if (!ok) return;
        IntMatrix sub(k, k);
        for (Eigen::Index j = 0; j < k; ++j)
          sub.col(j) = sub_rows.col(cols[static_cast<std::size_t>(j)]);
        const Int d = det_exact(sub);
        if (d > 1 || d < -1) ok = false;
      });
    });
    if (!ok) return false;
  }
  return true;
}

}  // namespace deltaef
