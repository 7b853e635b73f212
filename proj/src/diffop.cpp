#include "hgue/diffop.hpp"

#include <algorithm>
#include <tuple>

namespace hgue {

using TermKey = std::tuple<std::vector<Var>, Mono, int>;

static TermKey key_of(const OpTerm& t) { return {t.derivs, t.mono, t.eps_pow}; }

void LinDiffOp::add_term(OpTerm t) {
  if (t.c == 0) return;
  std::sort(t.derivs.begin(), t.derivs.end());
  TermKey k = key_of(t);
  for (auto& u : terms_) {
    if (key_of(u) == k) {
      u.c += t.c;
      if (u.c == 0) {
        u = terms_.back();
        terms_.pop_back();
        std::sort(terms_.begin(), terms_.end(),
                  [](const OpTerm& a, const OpTerm& b) { return key_of(a) < key_of(b); });
      }
      return;
    }
  }
  terms_.push_back(std::move(t));
  std::sort(terms_.begin(), terms_.end(),
            [](const OpTerm& a, const OpTerm& b) { return key_of(a) < key_of(b); });
}

LinDiffOp& LinDiffOp::operator+=(const LinDiffOp& o) {
  if (space_ != o.space_ && !o.terms_.empty() && !terms_.empty())
    throw SpaceMismatch("operator spaces differ");
  for (auto& t : o.terms_) add_term(t);
  return *this;
}

LinDiffOp& LinDiffOp::operator-=(const LinDiffOp& o) {
  if (space_ != o.space_ && !o.terms_.empty() && !terms_.empty())
    throw SpaceMismatch("operator spaces differ");
  for (auto t : o.terms_) {
    t.c = -t.c;
    add_term(std::move(t));
  }
  return *this;
}

LinDiffOp LinDiffOp::scaled(const Rat& c) const {
  LinDiffOp out(space_);
  if (c == 0) return out;
  for (auto t : terms_) {
    t.c *= c;
    out.add_term(std::move(t));
  }
  return out;
}

// d/dv applied to a monomial: (scalar, reduced monomial) or power 0
static std::optional<std::pair<Rat, Mono>> d_mono(const Mono& m, Var v) {
  uint32_t p = m.power_of(v);
  if (!p) return std::nullopt;
  return std::make_pair(Rat(p), *m.div_var(v));
}

LinDiffOp operator*(const LinDiffOp& l, const LinDiffOp& r) {
  LinDiffOp out(l.space_);
  for (auto& a : l.terms_) {
    for (auto& b : r.terms_) {
      // a.mono eps^{pa} d^alpha ( b.mono eps^{pb} d^beta f ): Leibniz over the
      // positions of alpha, each derivative hitting either b.mono or f
      std::size_t n = a.derivs.size();
      for (std::size_t mask = 0; mask < (1u << n); ++mask) {
        Rat c = a.c * b.c;
        Mono coeff_mono = b.mono;
        std::vector<Var> rest;
        bool dead = false;
        for (std::size_t i = 0; i < n; ++i) {
          if (mask & (1u << i)) {
            auto d = d_mono(coeff_mono, a.derivs[i]);
            if (!d) { dead = true; break; }
            c *= d->first;
            coeff_mono = d->second;
          } else {
            rest.push_back(a.derivs[i]);
          }
        }
        if (dead) continue;
        OpTerm t;
        t.c = c;
        t.eps_pow = a.eps_pow + b.eps_pow;
        t.mono = a.mono.times(coeff_mono);
        t.derivs = rest;
        t.derivs.insert(t.derivs.end(), b.derivs.begin(), b.derivs.end());
        out.add_term(std::move(t));
      }
    }
  }
  return out;
}

LinDiffOp commutator(const LinDiffOp& a, const LinDiffOp& b) { return a * b - b * a; }

LinDiffOp LinDiffOp::shifted_var(Var v, const Rat& shift) const {
  if (shift == 0) return *this;
  LinDiffOp out(space_);
  for (auto& t : terms_) {
    uint32_t e = t.mono.power_of(v);
    if (!e) {
      out.add_term(t);
      continue;
    }
    Mono base = t.mono;
    while (base.power_of(v)) base = *base.div_var(v);
    for (uint32_t k = 0; k <= e; ++k) {
      OpTerm u = t;
      u.c = t.c * binomial(e, k) * rat_pow(shift, e - k);
      u.mono = k ? base.times_var(v, k) : base;
      out.add_term(std::move(u));
    }
  }
  return out;
}

LinDiffOp LinDiffOp::eps_rescaled(const Rat& r) const {
  LinDiffOp out(space_);
  for (auto t : terms_) {
    if (t.eps_pow % 2 != 0)
      throw IrrationalResidue("operator eps rescale hits odd eps power " + std::to_string(t.eps_pow));
    t.c *= rat_pow(r, t.eps_pow / 2);
    out.add_term(std::move(t));
  }
  return out;
}

LinDiffOp LinDiffOp::rescaled_vars(
    const std::function<std::optional<std::pair<Var, Rat>>(Var)>& map, VarSpace new_space) const {
  LinDiffOp out(new_space);
  for (auto& t : terms_) {
    OpTerm u;
    u.c = t.c;
    u.eps_pow = t.eps_pow;
    for (auto& [v, p] : t.mono.vp) {
      auto mv = map(v);
      if (!mv) {
        u.mono = u.mono.times_var(v, p);
      } else {
        u.mono = u.mono.times_var(mv->first, p);
        u.c /= rat_pow(mv->second, p);
      }
    }
    for (Var v : t.derivs) {
      auto mv = map(v);
      if (!mv) {
        u.derivs.push_back(v);
      } else {
        u.derivs.push_back(mv->first);
        u.c *= mv->second;
      }
    }
    out.add_term(std::move(u));
  }
  return out;
}

std::string LinDiffOp::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (auto& t : terms_) {
    if (!s.empty()) s += " + ";
    s += "(" + t.c.get_str() + ")";
    if (t.eps_pow) s += " eps^" + std::to_string(t.eps_pow);
    if (!t.mono.is_one()) s += " " + t.mono.str();
    for (Var v : t.derivs) s += " d[" + var_name(v) + "]";
  }
  return s;
}

// ---------------------------------------------------------------------------
// Actions

EpsSeries apply(const LinDiffOp& op, const EpsSeries& a) {
  EpsSeries out(a.space(), a.trunc());
  for (auto& t : op.terms()) {
    if (t.derivs.size() > 2) throw std::logic_error("apply: operator order > 2");
    EpsSeries x = a;
    for (Var v : t.derivs) x = x.derivative(v);
    out += x.shifted_eps(t.eps_pow).times_mono(t.mono, Coeff(t.c));
  }
  return out;
}

const EpsSeries& TwistEnv::d1(Var v) {
  auto it = d1_.find(v);
  if (it != d1_.end()) return it->second;
  return d1_.emplace(v, F_->derivative(v)).first->second;
}

const EpsSeries& TwistEnv::d2(Var v, Var w) {
  if (w < v) std::swap(v, w);
  auto key = std::make_pair(v, w);
  auto it = d2_.find(key);
  if (it != d2_.end()) return it->second;
  return d2_.emplace(key, d1(v).derivative(w)).first->second;
}

EpsSeries apply_twisted(const LinDiffOp& op, TwistEnv& env, const EpsSeries& R) {
  EpsSeries out(R.space(), R.trunc());
  for (auto& t : op.terms()) {
    EpsSeries x(R.space(), R.trunc());
    switch (t.derivs.size()) {
      case 0:
        x = R;
        break;
      case 1: {
        Var i = t.derivs[0];
        x = R.derivative(i) + env.d1(i) * R;
        break;
      }
      case 2: {
        Var i = t.derivs[0], j = t.derivs[1];
        x = R.derivative(i).derivative(j) + env.d1(i) * R.derivative(j) + env.d1(j) * R.derivative(i) +
            (env.d1(i) * env.d1(j) + env.d2(i, j)) * R;
        break;
      }
      default:
        throw std::logic_error("apply_twisted: operator order > 2");
    }
    out += x.shifted_eps(t.eps_pow).times_mono(t.mono, Coeff(t.c));
  }
  return out;
}

EpsSeries residual(const LinDiffOp& op, TwistEnv& env) {
  EpsSeries unit = EpsSeries::constant(env.F().space(), env.F().trunc(), Coeff(1));
  return apply_twisted(op, env, unit);
}

long term_grading2(const OpTerm& t) {
  long g = -3 * t.eps_pow;
  for (auto& [v, p] : t.mono.vp) {
    if (v.fam() != Fam::T) throw std::logic_error("grading defined on the t-space only");
    g += 2 * (static_cast<long>(v.index()) - 1) * p;
  }
  for (Var v : t.derivs) {
    if (v.fam() != Fam::T) throw std::logic_error("grading defined on the t-space only");
    g -= 2 * (static_cast<long>(v.index()) - 1);
  }
  return g;
}

static void check_nilpotent(const LinDiffOp& op) {
  for (auto& t : op.terms())
    if (term_grading2(t) >= 0)
      throw NotNilpotent("operator term does not lower the grading: " + LinDiffOp(op.space()).str());
}

std::function<EpsSeries(const EpsSeries&)> exp_nilpotent(const LinDiffOp& op, long iter_cap) {
  check_nilpotent(op);
  LinDiffOp o = op;
  return [o, iter_cap](const EpsSeries& a) {
    EpsSeries acc = a;
    EpsSeries term = a;
    for (long n = 1; n <= iter_cap; ++n) {
      term = apply(o, term).scaled(Coeff(Rat(1, n)));
      if (term.is_zero()) return acc;
      acc += term;
    }
    throw std::runtime_error("exp_nilpotent did not terminate within the truncation");
  };
}

EpsSeries exp_twisted(const LinDiffOp& op, TwistEnv& env, const EpsSeries& R, long iter_cap) {
  check_nilpotent(op);
  EpsSeries acc = R;
  EpsSeries term = R;
  for (long n = 1; n <= iter_cap; ++n) {
    term = apply_twisted(op, env, term).scaled(Coeff(Rat(1, n)));
    if (term.is_zero()) return acc;
    acc += term;
  }
  throw std::runtime_error("exp_twisted did not terminate within the truncation");
}

// turn a zeta-free EpsSeries into a pure multiplication operator
static LinDiffOp series_as_op(const EpsSeries& s, VarSpace sp) {
  LinDiffOp out(sp);
  for (auto& [e, lay] : s.layers()) {
    for (auto& [m, c] : lay.terms()) {
      if (c.z != 0) throw std::logic_error("operator coefficients cannot carry zeta'(-1)");
      out.add_term(c.a, e, m, {});
    }
  }
  return out;
}

LinDiffOp conjugated_by_exp(const LinDiffOp& op, const EpsSeries& P) {
  LinDiffOp out(op.space());
  for (auto& t : op.terms()) {
    LinDiffOp base(op.space());
    base.add_term(t);
    out += base;
    if (t.derivs.empty()) continue;
    LinDiffOp pre(op.space());
    pre.add_term(t.c, t.eps_pow, t.mono, {});
    if (t.derivs.size() == 1) {
      out += pre * series_as_op(P.derivative(t.derivs[0]), op.space());
    } else if (t.derivs.size() == 2) {
      Var i = t.derivs[0], j = t.derivs[1];
      EpsSeries Pi = P.derivative(i), Pj = P.derivative(j);
      LinDiffOp di(op.space()), dj(op.space());
      di.add_term(1, 0, Mono::one(), {i});
      dj.add_term(1, 0, Mono::one(), {j});
      out += pre * (series_as_op(Pi, op.space()) * dj);
      out += pre * (series_as_op(Pj, op.space()) * di);
      out += pre * series_as_op(Pi * Pj + Pi.derivative(j), op.space());
    } else {
      throw std::logic_error("conjugated_by_exp: operator order > 2");
    }
  }
  return out;
}

}  // namespace hgue
