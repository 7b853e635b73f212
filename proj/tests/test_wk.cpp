#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hgue/linsolve.hpp"
#include "hgue/wk.hpp"

using namespace hgue;

namespace {

TruncSpec tr_std() {
  TruncSpec tr;
  tr.max_genus = 2;
  tr.max_t_index = 8;
  tr.max_t_degree = 6;
  return tr;
}

Rat corr(int g, std::vector<int> idx) { return wk_correlator(CorrelatorKey::make(g, std::move(idx))); }

}  // namespace

TEST_CASE("dimension rule and base cases") {
  CHECK(corr(0, {0, 0, 0}) == 1);
  CHECK(corr(0, {0, 2}) == 0);  // sum i = 2 != 3g-3+k = -1
  CHECK(corr(1, {}) == 0);      // genus-one constant convention
  CHECK(corr(1, {1}) == Rat(1, 24));
}

TEST_CASE("classical values") {
  CHECK(corr(0, {0, 0, 0, 1}) == 1);
  CHECK(corr(0, {0, 0, 1, 1}) == 1);
  CHECK(corr(0, {0, 0, 0, 0, 2}) == 1);
  CHECK(corr(0, {0, 0, 0, 1, 1}) == 2);
  CHECK(corr(1, {0, 2}) == Rat(1, 24));
  CHECK(corr(1, {1, 1}) == Rat(1, 24));
  CHECK(corr(2, {4}) == Rat(1, 1152));
  CHECK(corr(2, {1, 4}) == Rat(1, 384));
  CHECK(corr(2, {2, 3}) == Rat(29, 5760));
  CHECK(corr(3, {7}) == Rat(1, 82944));
}

TEST_CASE("string and dilaton consequences on all in-truncation keys") {
  TruncSpec tr = tr_std();
  for (int g = 0; g <= tr.max_genus; ++g) {
    for (int k = 1; k + 1 <= tr.max_t_degree; ++k) {
      long want = 3L * g - 3 + k;
      if (want < 0 || want > 1L * k * tr.max_t_index) continue;
      for (auto& ms : bounded_multisets(k, tr.max_t_index, static_cast<int>(want))) {
        Rat base = corr(g, ms);
        // string: <tau_0 prod> = sum_l <...tau_{i_l - 1}...>
        std::vector<int> with0 = ms;
        with0.insert(with0.begin(), 0);
        Rat s = 0;
        for (std::size_t l = 0; l < ms.size(); ++l) {
          std::vector<int> low = ms;
          low[l] -= 1;
          if (low[l] >= 0) s += corr(g, low);
        }
        CHECK(corr(g, with0) == s);
        // dilaton: <tau_1 prod> = (2g-2+k) <prod>
        std::vector<int> with1 = ms;
        with1.push_back(1);
        CHECK(corr(g, with1) == Rat(2 * g - 2 + static_cast<int>(k)) * base);
      }
    }
  }
}

TEST_CASE("kdv virasoro commutation relations") {
  TruncSpec tr = tr_std();
  std::vector<LinDiffOp> L;
  for (int m = -1; m <= 7; ++m) L.push_back(kdv_virasoro(m, tr));
  auto op = [&](int m) -> const LinDiffOp& { return L[m + 1]; };
  for (int m = -1; m <= 3; ++m)
    for (int n = -1; n <= 3; ++n) {
      if (m + n < -1) continue;
      CHECK(commutator(op(m), op(n)) == op(m + n).scaled(m - n));
    }
}

TEST_CASE("virasoro residuals annihilate Z_WK") {
  TruncSpec tr = tr_std();
  EpsSeries F = wk_free_energy(tr);
  TwistEnv env(F);
  for (int m = -1; m <= 3; ++m) {
    EpsSeries res = residual(dilaton_shifted(kdv_virasoro(m, tr)), env);
    // certified window: degree <= D-1, index <= I-m-1, eps layer <= 2G-2
    for (auto& [e, lay] : res.layers()) {
      if (e > 2 * tr.max_genus - 2) continue;
      for (auto& [mono, c] : lay.terms()) {
        if (mono.degree(Fam::T) > tr.max_t_degree - 1) continue;
        if (mono.max_index(Fam::T) > tr.max_t_index - (m > 0 ? m : 0) - 1) continue;
        CAPTURE(m);
        CAPTURE(e);
        CAPTURE(mono.str());
        CHECK(c.is_zero());
      }
    }
  }
}

// Independent route: order-by-order linear solve of the constraints on the
// partition-function coefficients themselves (no recursion involved).
TEST_CASE("constraint solve reproduces the first correlators") {
  TruncSpec tr;
  tr.max_genus = 1;
  tr.max_t_index = 6;
  tr.max_t_degree = 6;
  tr.eps_slack = 2;

  // unknowns: Z-coefficients on grading-0 monomials, layers -2 and 0
  auto grading2 = [](const Mono& m, int layer) {
    long g = -3L * layer;
    for (auto& [v, p] : m.vp) g += 2L * (static_cast<long>(v.index()) - 1) * p;
    return g;
  };
  std::vector<std::pair<int, Mono>> cols;
  std::map<std::pair<int, std::string>, int> col_id;
  for (int layer : {-2, 0}) {
    for (int k = 0; k <= 4; ++k) {
      long want = -grading2(Mono::one(), layer) / 2;  // sum (i-1) = -3*layer/2... solved below
      (void)want;
      for (int sum = 0; sum <= 4 * tr.max_t_index; ++sum) {
        for (auto& ms : bounded_multisets(k, tr.max_t_index, sum)) {
          Mono m;
          for (int i : ms) m = m.times_var(var_t(i));
          if (grading2(m, layer) != 0) continue;
          if (col_id.count({layer, m.str()})) continue;
          col_id[{layer, m.str()}] = static_cast<int>(cols.size());
          cols.push_back({layer, m});
        }
      }
    }
  }

  // rows: residual coefficients of L_m(t~) Z for m = -1..2 at outputs of
  // degree <= 2 (so no unknown outside the deg <= 4 ansatz can contribute),
  // plus the normalization rows for the constant terms of Z
  std::map<std::pair<int, Mono>, LinRow> rows;
  for (int m = -1; m <= 2; ++m) {
    LinDiffOp op = dilaton_shifted(kdv_virasoro(m, tr));
    for (std::size_t c = 0; c < cols.size(); ++c) {
      EpsSeries basis(VarSpace::T_SPACE, tr);
      TruncatedSeries lay(VarSpace::T_SPACE, tr);
      lay.add_term(cols[c].second, Coeff(1));
      basis.add_layer(cols[c].first, lay);
      EpsSeries img = apply(op, basis);
      for (auto& [e, s] : img.layers())
        for (auto& [mono, cf] : s.terms()) {
          if (mono.degree(Fam::T) > 2) continue;
          if (mono.max_index(Fam::T) > tr.max_t_index - 3) continue;
          if (cf.z != 0) throw std::logic_error("unexpected zeta part");
          rows[{e + 1000 * (m + 2), mono}].a[static_cast<int>(c)] += cf.a;
        }
    }
  }
  std::vector<LinRow> sys;
  for (auto& [k, r] : rows) sys.push_back(r);
  // normalization: constant term of Z is 1 at eps^0 (and 0 at eps^-2 is
  // forced by grading: the empty monomial at layer -2 has grading 6 != 0,
  // hence is not even a column)
  LinRow norm;
  norm.a[col_id.at({0, Mono::one().str()})] = 1;
  norm.rhs = Coeff(1);
  sys.push_back(norm);

  auto pinned = solve_pinned(std::move(sys), static_cast<int>(cols.size()));

  auto expect = [&](int layer, const Mono& m, const Rat& v) {
    auto it = pinned.find(col_id.at({layer, m.str()}));
    REQUIRE(it != pinned.end());
    CHECK(it->second == Coeff(v));
  };
  // Z = e^F: z[t0^3, -2] = <tau_0^3>/3! = 1/6, z[t1, 0] = <tau_1>_1 = 1/24,
  // z[t0^3 t1, -2] = <tau_0^3 tau_1>/3! + (1/6)(1/24)
  expect(-2, Mono::of(var_t(0), 3), Rat(1, 6));
  expect(0, Mono::of(var_t(1)), Rat(1, 24));
  expect(-2, Mono::of(var_t(0), 3).times_var(var_t(1)), Rat(1, 6) + Rat(1, 144));
  expect(0, Mono::of(var_t(0)).times_var(var_t(2)), Rat(1, 24));
}

TEST_CASE("free energy assembles correlators with symmetry factors") {
  TruncSpec tr = tr_std();
  EpsSeries F = wk_free_energy(tr);
  CHECK(F.layer_or_zero(-2).coeff(Mono::of(var_t(0), 3)) == Coeff(Rat(1, 6)));
  CHECK(F.layer_or_zero(0).coeff(Mono::of(var_t(1))) == Coeff(Rat(1, 24)));
  CHECK(F.layer_or_zero(2).coeff(Mono::of(var_t(4))) == Coeff(Rat(1, 1152)));
  CHECK(F.layer_or_zero(0).coeff(Mono::of(var_t(1), 2)) == Coeff(Rat(1, 48)));
  // no genus-one constant
  CHECK(F.layer_or_zero(0).coeff(Mono::one()) == Coeff(0));
}
