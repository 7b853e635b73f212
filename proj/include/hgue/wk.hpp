/*
  Witten-Kontsevich intersection numbers and the KdV Virasoro family.

  Correlators <tau_{i_1}...tau_{i_k}>_g are computed by the Virasoro
  (DVV) recursion that follows from extracting coefficients of
  L_m(eps^{-1} t~, eps d/dt) Z = 0: with m = i*-1 for any i* >= 1 in the
  key, S the key with that entry removed,

    (2m+3)!! <tau_{m+1} S>_g
      = sum_{l in S} (2 i_l + 2m + 1)!!/(2 i_l - 1)!! <S: i_l -> i_l + m>_g
      + 1/2 sum_{a+b=m-1} (2a+1)!!(2b+1)!! [ <{a,b} u S>_{g-1}
            + sum_{g'+g''=g, I u J = S} <{a} u I>_{g'} <{b} u J>_{g''} ]
      + delta_{m,0} delta_{S,0} delta_{g,1} / 8.

  Values are defined to be zero unless sum i = 3g-3+k; the genus-one
  closed-surface constant is set to zero.
*/
#pragma once

#include "hgue/diffop.hpp"
#include "hgue/series.hpp"

namespace hgue {

struct CorrelatorKey {
  int genus = 0;
  std::vector<int> indices;  // sorted ascending

  static CorrelatorKey make(int g, std::vector<int> idx);
  friend auto operator<=>(const CorrelatorKey&, const CorrelatorKey&) = default;
};

bool dimension_ok(const CorrelatorKey& k);

// exact <tau_{i_1}...tau_{i_k}>_g, memoized across calls
Rat wk_correlator(const CorrelatorKey& key);

// F^{WK} = sum_g eps^{2g-2} sum_multisets <...>_g prod t / prod mult!
EpsSeries wk_free_energy(const TruncSpec& tr);

// L_m^{KdV}(eps^{-1} t, eps d/dt) on the t-space, no dilaton shift
LinDiffOp kdv_virasoro(int m, const TruncSpec& tr);

// t_1 -> t_1 - 1 in the coefficients
inline LinDiffOp dilaton_shifted(const LinDiffOp& op) { return op.shifted_var(var_t(1), Rat(-1)); }

// enumerate all sorted multisets of the given size over [0, max_index]
// with the given sum (helper shared with the Hodge identity partitions)
std::vector<std::vector<int>> bounded_multisets(int size, int max_index, int sum);

}  // namespace hgue
