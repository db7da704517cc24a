#pragma once

#include <map>
#include <vector>

#include "deltaef/rational.hpp"

namespace deltaef {

// The quotient group Z^d / H Z^d with representatives chosen as the integer
// points of the half-open fundamental parallelepiped H [0,1)^d.
struct CosetSystem {
  IntMatrix h;
  Int delta = 1;                            // |det H| = number of cosets
  std::vector<IntVector> reps;              // reps[0] = 0, remainder lex ordered
  std::vector<std::vector<int>> add_table;  // add_table[i][j] = classify(g_i + g_j)

  // Index of the representative congruent to v mod H Z^d.
  int classify(const IntVector& v) const;

  // The representative vector itself.
  IntVector reduce(const IntVector& v) const;

 private:
  friend CosetSystem coset_representatives(const IntMatrix& h, const Int& delta_cap);
  RatMatrix h_inv_;
  std::map<std::vector<Int>, int> index_;
};

// Enumerates the coset representatives of an invertible integer H. Throws
// CapExceededError when |det H| exceeds delta_cap and std::invalid_argument
// when H is singular.
CosetSystem coset_representatives(const IntMatrix& h, const Int& delta_cap = Int(6));

}  // namespace deltaef
