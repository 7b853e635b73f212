/*
  Bernoulli and Euler numbers, exact.

  B_n from the defining recurrence sum_{k=0}^{n} C(n+1,k) B_k = 0 (B_0 = 1),
  E_n from inverting cosh: sum_{j=0}^{n} C(2n,2j) E_{2j} = 0 (E_0 = 1),
  odd-index E vanish. Both memoized. Tests cross-check against the
  Akiyama-Tanigawa scheme and the boustrophedon (zigzag) triangle.
*/
#pragma once

#include <vector>

#include "hgue/rational.hpp"

namespace hgue {

enum class NumberKind { BERNOULLI, EULER };

Rat bernoulli(long n);
Rat euler(long n);

inline Rat number_seq(NumberKind kind, long n) {
  return kind == NumberKind::BERNOULLI ? bernoulli(n) : euler(n);
}

}  // namespace hgue
