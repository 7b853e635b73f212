#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hgue/diffop.hpp"

using namespace hgue;

namespace {

TruncSpec tr_small() {
  TruncSpec tr;
  tr.max_genus = 2;
  tr.max_t_index = 5;
  tr.max_t_degree = 5;
  tr.max_s_index = 3;
  tr.max_s_degree = 4;
  tr.max_xi_degree = 5;
  return tr;
}

EpsSeries mono_series(VarSpace sp, const TruncSpec& tr, const Mono& m, int eps = 0) {
  TruncatedSeries s(sp, tr);
  s.add_term(m, Coeff(1));
  return EpsSeries::from_layer(eps, s);
}

struct Rng {
  uint64_t s = 0x9e3779b97f4a7c15ull;
  uint64_t next() { return s = s * 6364136223846793005ull + 1442695040888963407ull; }
  long pick(long n) { return static_cast<long>(next() >> 33) % n; }
};

LinDiffOp random_op(Rng& rng, const TruncSpec& tr) {
  LinDiffOp op(VarSpace::T_SPACE);
  int nterms = 1 + rng.pick(3);
  for (int t = 0; t < nterms; ++t) {
    Mono m;
    if (rng.pick(2)) m = m.times_var(var_t(rng.pick(tr.max_t_index + 1)));
    std::vector<Var> d;
    int nd = rng.pick(3);
    for (int i = 0; i < nd; ++i) d.push_back(var_t(rng.pick(tr.max_t_index + 1)));
    op.add_term(rat(rng.pick(7) - 3, 1 + rng.pick(4)), 2 * (rng.pick(3) - 1), m, d);
  }
  return op;
}

}  // namespace

TEST_CASE("apply basics") {
  TruncSpec tr = tr_small();
  LinDiffOp d0(VarSpace::T_SPACE);
  d0.add_term(1, 0, Mono::one(), {var_t(0)});
  EpsSeries t0sq = mono_series(VarSpace::T_SPACE, tr, Mono::of(var_t(0), 2));
  EpsSeries two_t0 = mono_series(VarSpace::T_SPACE, tr, Mono::of(var_t(0))).scaled(Coeff(2));
  CHECK(apply(d0, t0sq) == two_t0);

  LinDiffOp t1d0(VarSpace::T_SPACE);
  t1d0.add_term(1, 0, Mono::of(var_t(1)), {var_t(0)});
  EpsSeries t0 = mono_series(VarSpace::T_SPACE, tr, Mono::of(var_t(0)));
  CHECK(apply(t1d0, t0) == mono_series(VarSpace::T_SPACE, tr, Mono::of(var_t(1))));
}

TEST_CASE("apply is linear") {
  TruncSpec tr = tr_small();
  Rng rng;
  for (int trial = 0; trial < 10; ++trial) {
    LinDiffOp op = random_op(rng, tr);
    // keep order <= 2 for apply
    LinDiffOp op2(VarSpace::T_SPACE);
    for (auto t : op.terms()) {
      t.derivs.resize(std::min<std::size_t>(t.derivs.size(), 2));
      op2.add_term(t);
    }
    EpsSeries a = mono_series(VarSpace::T_SPACE, tr, Mono::of(var_t(rng.pick(4)), 1 + rng.pick(2)), -2);
    EpsSeries b = mono_series(VarSpace::T_SPACE, tr, Mono::of(var_t(rng.pick(4))).times_var(var_t(1)), 0);
    CHECK(apply(op2, a + b) == apply(op2, a) + apply(op2, b));
  }
}

TEST_CASE("commutator: antisymmetry and Jacobi") {
  TruncSpec tr = tr_small();
  Rng rng;
  for (int trial = 0; trial < 8; ++trial) {
    LinDiffOp a = random_op(rng, tr);
    LinDiffOp b = random_op(rng, tr);
    LinDiffOp c = random_op(rng, tr);
    CHECK(commutator(a, a).is_zero());
    LinDiffOp jac = commutator(commutator(a, b), c) + commutator(commutator(b, c), a) +
                    commutator(commutator(c, a), b);
    CHECK(jac.is_zero());
  }
}

TEST_CASE("exp_nilpotent: zero operator and inverse") {
  TruncSpec tr = tr_small();
  LinDiffOp zero(VarSpace::T_SPACE);
  auto e0 = exp_nilpotent(zero, 10);
  EpsSeries a = mono_series(VarSpace::T_SPACE, tr, Mono::of(var_t(2), 2), -2);
  CHECK(e0(a) == a);

  // one grading-lowering operator and its inverse
  LinDiffOp g(VarSpace::T_SPACE);
  g.add_term(1, 0, Mono::one(), {var_t(2)});                 // d/dt2, grading -2
  g.add_term(rat(-1, 3), 0, Mono::of(var_t(0)), {var_t(1)}); // t0 d/dt1, grading -2
  g.add_term(rat(1, 2), 2, Mono::one(), {var_t(0), var_t(0)});
  auto eg = exp_nilpotent(g, 40);
  auto eginv = exp_nilpotent(g.scaled(-1), 40);
  EpsSeries b = mono_series(VarSpace::T_SPACE, tr, Mono::of(var_t(1), 2).times_var(var_t(2)), 0) +
                mono_series(VarSpace::T_SPACE, tr, Mono::of(var_t(0)), -2);
  CHECK(eginv(eg(b)) == b);

  LinDiffOp raising(VarSpace::T_SPACE);
  raising.add_term(1, 0, Mono::of(var_t(3)), {var_t(0)});  // grading +4: not nilpotent
  CHECK_THROWS_AS(exp_nilpotent(raising, 10), NotNilpotent);
}

TEST_CASE("conjugation by an exponential matches the twisted action") {
  TruncSpec tr = tr_small();
  // P = (1/2eps^2)(sb1^2 + (1+xi) sb1) on the xs-space
  TruncatedSeries p(VarSpace::XS_SPACE, tr);
  p.add_term(Mono::of(var_sbar(1), 2), Coeff(1));
  p.add_term(Mono::of(var_sbar(1)), Coeff(1));
  p.add_term(Mono::of(var_sbar(1)).times_var(var_xi), Coeff(1));
  EpsSeries P = EpsSeries::from_layer(-2, p.scaled(Coeff(rat(1, 2))));

  LinDiffOp op(VarSpace::XS_SPACE);
  op.add_term(1, 0, Mono::one(), {var_sbar(1)});
  op.add_term(rat(1, 3), 2, Mono::one(), {var_sbar(1), var_sbar(2)});
  op.add_term(2, 0, Mono::of(var_sbar(2)), {var_sbar(2)});

  LinDiffOp conj = conjugated_by_exp(op, P);

  // conjugate(op, 1) = op
  CHECK(conjugated_by_exp(op, EpsSeries(VarSpace::XS_SPACE, tr)) == op);

  // first-order example: e^{-P} d/dsb1 e^{P} = d/dsb1 + dP/dsb1
  LinDiffOp d1(VarSpace::XS_SPACE);
  d1.add_term(1, 0, Mono::one(), {var_sbar(1)});
  LinDiffOp d1c = conjugated_by_exp(d1, P);
  LinDiffOp expect = d1;
  expect.add_term(1, -2, Mono::of(var_sbar(1)), {});
  expect.add_term(rat(1, 2), -2, Mono::one(), {});
  expect.add_term(rat(1, 2), -2, Mono::of(var_xi), {});
  CHECK(d1c == expect);

  // against the twisted application, which computes e^{-P} op (e^{P} f)
  Rng rng;
  TwistEnv env(P);
  for (int trial = 0; trial < 6; ++trial) {
    Mono m = Mono::of(var_sbar(1 + rng.pick(2)), 1 + rng.pick(2));
    if (rng.pick(2)) m = m.times_var(var_xi);
    EpsSeries f = mono_series(VarSpace::XS_SPACE, tr, m, 0);
    CHECK(apply(conj, f) == apply_twisted(op, env, f));
  }
}

TEST_CASE("operator pretty printer is canonical") {
  LinDiffOp a(VarSpace::T_SPACE);
  a.add_term(rat(1, 2), -2, Mono::of(var_t(0), 2), {});
  a.add_term(1, 0, Mono::of(var_t(1)), {var_t(0)});
  LinDiffOp b(VarSpace::T_SPACE);
  b.add_term(1, 0, Mono::of(var_t(1)), {var_t(0)});
  b.add_term(rat(1, 4), -2, Mono::of(var_t(0), 2), {});
  b.add_term(rat(1, 4), -2, Mono::of(var_t(0), 2), {});
  CHECK(a == b);
  CHECK(a.str() == b.str());
  CHECK(a.str() == "(1/2) eps^-2 t0^2 + (1) t1 d[t0]");
}
