#include "hgue/implicit.hpp"

namespace hgue {

static TruncatedSeries iterate(const TruncatedSeries& start,
                               const std::function<TruncatedSeries(const TruncatedSeries&)>& step,
                               long cap, const char* what) {
  TruncatedSeries cur = start;
  for (long n = 0; n < cap; ++n) {
    TruncatedSeries next = step(cur);
    if (next == cur) return cur;
    cur = next;
  }
  throw NoConvergence(std::string(what) + ": fixed point did not stabilize");
}

TruncatedSeries solve_implicit(ImplicitKind kind, const TruncSpec& tr) {
  if (kind == ImplicitKind::V_OF_T) {
    TruncatedSeries t0(VarSpace::T_SPACE, tr);
    t0.add_term(Mono::of(var_t(0)), Coeff(1));
    auto step = [&](const TruncatedSeries& v) {
      TruncatedSeries next = t0;
      TruncatedSeries vpow = TruncatedSeries::constant(VarSpace::T_SPACE, tr, Coeff(1));
      Rat fac = 1;
      for (int i = 1; i <= tr.max_t_index; ++i) {
        vpow *= v;
        fac *= i;
        if (vpow.is_zero()) break;
        next += vpow.times_mono(Mono::of(var_t(i)), Coeff(Rat(1) / fac));
      }
      return next;
    };
    return iterate(t0, step, tr.max_t_degree + 3, "V_OF_T");
  }

  // W_OF_XS
  TruncatedSeries x(VarSpace::XS_SPACE, tr);
  x.add_term(Mono::one(), Coeff(1));
  x.add_term(Mono::of(var_xi), Coeff(1));
  auto step = [&](const TruncatedSeries& w) {
    TruncatedSeries next = x;
    TruncatedSeries wpow = TruncatedSeries::constant(VarSpace::XS_SPACE, tr, Coeff(1));
    for (int k = 1; k <= tr.max_s_index; ++k) {
      wpow *= w;
      if (wpow.is_zero()) break;
      next += wpow.times_mono(Mono::of(var_sbar(k)), Coeff(Rat(k)));
    }
    return next;
  };
  return iterate(x, step, tr.max_s_degree + 3, "W_OF_XS");
}

}  // namespace hgue
