/*
  Fixed-point solvers for the two implicit series of the correspondence:

    V_OF_T:  v = t_0 + sum_{i>=1} t_i v^i / i!      on the t-space,
    W_OF_XS: w = x + sum_{k>=1} k sbar_k w^k        on the (xi, sbar)-space,
             x = 1 + xi.

  Both fixed points are filtered by total degree, so plain iteration
  stabilizes in at most (degree bound + 2) rounds; failure to stabilize
  signals an ill-posed truncation and raises NoConvergence.
*/
#pragma once

#include "hgue/series.hpp"

namespace hgue {

struct NoConvergence : std::runtime_error {
  explicit NoConvergence(const std::string& w) : std::runtime_error(w) {}
};

enum class ImplicitKind { V_OF_T, W_OF_XS };

TruncatedSeries solve_implicit(ImplicitKind kind, const TruncSpec& tr);

}  // namespace hgue
