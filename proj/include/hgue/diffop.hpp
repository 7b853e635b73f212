/*
  Linear differential operators with monomial coefficients acting on
  eps-graded series.

  A term is  c * eps^p * mono * d/dv_1 ... d/dv_k  (k arbitrary inside
  compositions; every operator actually applied to a series is at most
  second order, which apply() enforces). Operators are normalized to a
  canonical sorted term list, so equality and pretty-printing are
  deterministic.

  Partition functions are handled in exponential form: applying L to
  Z = e^F * R is done by the twisted action e^{-F} L (e^F R), which never
  materializes e^F. TwistEnv caches the partial derivatives of F.

  exp_nilpotent realizes e^{op} for operators that strictly lower the
  grading deg t_i = i - 1, deg eps = -3/2 (doubled to stay integral);
  on a truncated space such sums terminate.
*/
#pragma once

#include <functional>

#include "hgue/series.hpp"

namespace hgue {

struct OpTerm {
  Rat c = 1;
  int eps_pow = 0;
  Mono mono;
  std::vector<Var> derivs;  // sorted

  friend bool operator==(const OpTerm& l, const OpTerm& r) {
    return l.eps_pow == r.eps_pow && l.mono == r.mono && l.derivs == r.derivs && l.c == r.c;
  }
};

class LinDiffOp {
 public:
  LinDiffOp() = default;
  explicit LinDiffOp(VarSpace sp) : space_(sp) {}

  VarSpace space() const { return space_; }
  const std::vector<OpTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(OpTerm t);
  void add_term(const Rat& c, int eps_pow, Mono mono, std::vector<Var> derivs) {
    add_term(OpTerm{c, eps_pow, std::move(mono), std::move(derivs)});
  }

  LinDiffOp& operator+=(const LinDiffOp& o);
  LinDiffOp& operator-=(const LinDiffOp& o);
  friend LinDiffOp operator+(LinDiffOp l, const LinDiffOp& r) { l += r; return l; }
  friend LinDiffOp operator-(LinDiffOp l, const LinDiffOp& r) { l -= r; return l; }
  LinDiffOp scaled(const Rat& c) const;

  // operator composition (this after o acts first? no: (this*o)f = this(o(f)))
  friend LinDiffOp operator*(const LinDiffOp& l, const LinDiffOp& r);

  // replace v by (v + shift) in all coefficient monomials (dilaton shifts)
  LinDiffOp shifted_var(Var v, const Rat& shift) const;

  // eps -> sqrt(r)*eps on the operator; every term must carry an even eps power
  LinDiffOp eps_rescaled(const Rat& r) const;

  // change of variables v' = factor * v: monomial v^e becomes v'^e / factor^e,
  // derivative d/dv becomes factor * d/dv'
  LinDiffOp rescaled_vars(const std::function<std::optional<std::pair<Var, Rat>>(Var)>& map,
                          VarSpace new_space) const;

  friend bool operator==(const LinDiffOp& l, const LinDiffOp& r) {
    return l.space_ == r.space_ && l.terms_ == r.terms_;
  }

  std::string str() const;

 private:
  VarSpace space_ = VarSpace::T_SPACE;
  std::vector<OpTerm> terms_;
};

LinDiffOp commutator(const LinDiffOp& a, const LinDiffOp& b);

// plain action on a series (terms must have at most 2 derivatives)
EpsSeries apply(const LinDiffOp& op, const EpsSeries& a);

// Cached partials of the exponent F for twisted application.
class TwistEnv {
 public:
  explicit TwistEnv(const EpsSeries& F) : F_(&F) {}
  const EpsSeries& F() const { return *F_; }
  const EpsSeries& d1(Var v);
  const EpsSeries& d2(Var v, Var w);

 private:
  const EpsSeries* F_;
  std::map<Var, EpsSeries> d1_;
  std::map<std::pair<Var, Var>, EpsSeries> d2_;
};

// e^{-F} op (e^F R)
EpsSeries apply_twisted(const LinDiffOp& op, TwistEnv& env, const EpsSeries& R);

// e^{-F} op e^F as a residual on the constant series 1 (Virasoro residuals)
EpsSeries residual(const LinDiffOp& op, TwistEnv& env);

// doubled grading: deg t_i = 2(i-1), deg eps = -3, deg d/dt_i = -2(i-1).
long term_grading2(const OpTerm& t);

struct NotNilpotent : std::runtime_error {
  explicit NotNilpotent(const std::string& w) : std::runtime_error(w) {}
};

// verifies every term strictly lowers the grading, then returns an
// applicator computing e^{op} a = sum op^n a / n!
std::function<EpsSeries(const EpsSeries&)> exp_nilpotent(const LinDiffOp& op, long iter_cap);

// twisted exponential: e^{-F} e^{op} (e^F R); same nilpotency requirement
// on op is assumed to hold for the twisted operator as well (the grading
// argument transfers when F is grading-homogeneous of degree <= 0)
EpsSeries exp_twisted(const LinDiffOp& op, TwistEnv& env, const EpsSeries& R, long iter_cap);

// e^{-P} op e^{P} materialized as an operator; P an EpsSeries whose partial
// derivatives stay polynomial (used with P = A^vac / 2 eps^2)
LinDiffOp conjugated_by_exp(const LinDiffOp& op, const EpsSeries& P);

}  // namespace hgue
