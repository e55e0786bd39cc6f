#pragma once

#include "braidforce/braid.hpp"

#include <initializer_list>
#include <string>
#include <vector>

namespace bft {

using braidforce::Braid;
using braidforce::MatQ;
using braidforce::Permutation;
using braidforce::Rational;

// rows of "p/q" or integer strings
inline Braid B(std::vector<std::vector<Rational>> rows, std::vector<int> tau = {}) {
  MatQ m(rows.size(), rows[0].size());
  for (std::size_t a = 0; a < rows.size(); ++a)
    for (std::size_t i = 0; i < rows[a].size(); ++i) m(a, i) = rows[a][i];
  if (tau.empty()) return Braid(m);
  return Braid(m, Permutation(tau));
}

inline Rational Q(long long p, long long q = 1) { return Rational(p, q); }

} // namespace bft
