/*
  Truncated multivariate formal power series over Q + Q*zeta'(-1), and
  their epsilon-graded layering.

  Variable families:
    T     t_0, t_1, ...          (Witten-Kontsevich / Hodge times)
    SBAR  sbar_1, sbar_2, ...    (renormalized even couplings)
    SRAW  s_1, s_2, ...          (full GUE couplings)
    XI    xi = x - 1             (expansion of the 't Hooft variable at 1)

  A VarSpace declares which families a series may use; cross-space
  operations go through explicit substitution maps (correspondence.hpp).

  A TruncatedSeries is one epsilon-layer: a sparse map from exponent
  vectors to coefficients, truncated by per-family degree and index
  bounds. An EpsSeries is a finite map eps-exponent -> TruncatedSeries;
  layers above the window top are dropped silently (standard truncation
  semantics), the bottom is not truncated -- free energies sit at
  eps^{-2} and intermediates may transiently dip lower.
*/
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hgue/rational.hpp"

namespace hgue {

// ---------------------------------------------------------------------------
// Variables

enum class Fam : uint8_t { T = 0, SBAR = 1, SRAW = 2, XI = 3 };

// A variable is a (family, index) pair packed into 32 bits; XI has index 0.
struct Var {
  uint32_t id;
  constexpr Var() : id(0) {}
  constexpr Var(Fam f, uint32_t index) : id((static_cast<uint32_t>(f) << 24) | index) {}
  Fam fam() const { return static_cast<Fam>(id >> 24); }
  uint32_t index() const { return id & 0xffffffu; }
  friend auto operator<=>(const Var&, const Var&) = default;
};

inline Var var_t(uint32_t i) { return Var(Fam::T, i); }
inline Var var_sbar(uint32_t k) { return Var(Fam::SBAR, k); }
inline Var var_sraw(uint32_t k) { return Var(Fam::SRAW, k); }
inline const Var var_xi = Var(Fam::XI, 0);

std::string var_name(Var v);

// ---------------------------------------------------------------------------
// Monomials: sorted (var, power) lists, power >= 1

struct Mono {
  std::vector<std::pair<Var, uint32_t>> vp;

  Mono() = default;
  static Mono one() { return Mono(); }
  static Mono of(Var v, uint32_t p = 1) {
    Mono m;
    if (p) m.vp.push_back({v, p});
    return m;
  }

  bool is_one() const { return vp.empty(); }
  uint32_t power_of(Var v) const {
    for (auto& [w, p] : vp)
      if (w == v) return p;
    return 0;
  }
  long degree(Fam f) const {
    long d = 0;
    for (auto& [v, p] : vp)
      if (v.fam() == f) d += p;
    return d;
  }
  long total_degree() const {
    long d = 0;
    for (auto& [v, p] : vp) d += p;
    return d;
  }
  long max_index(Fam f) const {
    long m = -1;
    for (auto& [v, p] : vp)
      if (v.fam() == f && static_cast<long>(v.index()) > m) m = v.index();
    return m;
  }
  // weighted degree sum_k k * mult(s_k) over a family
  long weight(Fam f) const {
    long w = 0;
    for (auto& [v, p] : vp)
      if (v.fam() == f) w += static_cast<long>(v.index()) * p;
    return w;
  }

  Mono times(const Mono& o) const;
  Mono times_var(Var v, uint32_t p = 1) const { return times(Mono::of(v, p)); }
  // divide by v^1; returns the reduced power that was present (0 if absent)
  std::optional<Mono> div_var(Var v) const;

  friend auto operator<=>(const Mono&, const Mono&) = default;
  std::string str() const;
};

// ---------------------------------------------------------------------------
// Truncation

struct TruncSpec {
  int max_genus = 2;      // G: layers kept up to eps^{2G-2+eps_slack}
  int max_t_index = 8;    // I
  int max_t_degree = 6;   // D, total degree in the t's
  int max_s_index = 4;    // K, index bound for sbar
  int max_sraw_index = 8; // raw coupling index bound
  int max_s_degree = 6;   // degree bound in sbar (and in raw s)
  int max_xi_degree = 8;
  int eps_slack = 2;

  int eps_min() const { return -2; }
  int eps_max() const { return 2 * max_genus - 2 + eps_slack; }

  bool keeps(const Mono& m) const {
    if (m.degree(Fam::T) > max_t_degree) return false;
    if (m.max_index(Fam::T) > max_t_index) return false;
    if (m.degree(Fam::XI) > max_xi_degree) return false;
    if (m.degree(Fam::SBAR) > max_s_degree) return false;
    if (m.max_index(Fam::SBAR) > max_s_index) return false;
    if (m.degree(Fam::SRAW) > max_s_degree) return false;
    if (m.max_index(Fam::SRAW) > max_sraw_index) return false;
    return true;
  }

  friend bool operator==(const TruncSpec&, const TruncSpec&) = default;
};

// ---------------------------------------------------------------------------
// Spaces

enum class VarSpace : uint8_t {
  T_SPACE,   // t's only
  XS_SPACE,  // xi and sbar
  XRAW_SPACE // xi and raw s
};

bool space_allows(VarSpace s, Fam f);
std::string space_name(VarSpace s);

struct SpaceMismatch : std::runtime_error {
  explicit SpaceMismatch(const std::string& w) : std::runtime_error(w) {}
};
struct BadConstantTerm : std::runtime_error {
  explicit BadConstantTerm(const std::string& w) : std::runtime_error(w) {}
};

// ---------------------------------------------------------------------------
// One epsilon-layer

class TruncatedSeries {
 public:
  TruncatedSeries() = default;
  TruncatedSeries(VarSpace sp, const TruncSpec& tr) : space_(sp), trunc_(tr) {}
  static TruncatedSeries constant(VarSpace sp, const TruncSpec& tr, const Coeff& c) {
    TruncatedSeries s(sp, tr);
    s.add_term(Mono::one(), c);
    return s;
  }

  VarSpace space() const { return space_; }
  const TruncSpec& trunc() const { return trunc_; }
  const std::map<Mono, Coeff>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Coeff coeff(const Mono& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Coeff() : it->second;
  }
  Coeff constant_term() const { return coeff(Mono::one()); }

  void add_term(const Mono& m, const Coeff& c);

  TruncatedSeries& operator+=(const TruncatedSeries& o);
  TruncatedSeries& operator-=(const TruncatedSeries& o);
  friend TruncatedSeries operator+(TruncatedSeries l, const TruncatedSeries& r) { l += r; return l; }
  friend TruncatedSeries operator-(TruncatedSeries l, const TruncatedSeries& r) { l -= r; return l; }
  friend TruncatedSeries operator*(const TruncatedSeries& l, const TruncatedSeries& r);
  TruncatedSeries& operator*=(const TruncatedSeries& o) { *this = *this * o; return *this; }

  TruncatedSeries scaled(const Coeff& c) const;
  TruncatedSeries times_mono(const Mono& m, const Coeff& c = Coeff(1)) const;
  TruncatedSeries derivative(Var v) const;

  // formal integral sum c*m -> sum c*m*v^1/(deg_v+1); used for h_0 assembly
  TruncatedSeries integral(Var v) const;

  TruncatedSeries pow(long e) const;         // e >= 0
  TruncatedSeries inverse() const;           // unit rational constant term
  TruncatedSeries exp_series() const;        // zero constant term
  TruncatedSeries log_series() const;        // constant term 1

  // coefficient extraction: view this series as a polynomial in the given
  // family and return the coefficient series of the given family-monomial
  TruncatedSeries coeff_of(Fam f, const Mono& fpart) const;

  friend bool operator==(const TruncatedSeries& l, const TruncatedSeries& r) {
    return l.space_ == r.space_ && l.terms_ == r.terms_;
  }

  std::string str() const;

 private:
  void check_compatible(const TruncatedSeries& o) const;

  VarSpace space_ = VarSpace::T_SPACE;
  TruncSpec trunc_;
  std::map<Mono, Coeff> terms_;
};

enum class ArithOp { ADD, MUL, SUB };
TruncatedSeries series_arith(const TruncatedSeries& a, const TruncatedSeries& b, ArithOp op);

enum class ExpLogOp { EXP, LOG };
TruncatedSeries series_exp_log(const TruncatedSeries& a, ExpLogOp op);

// ---------------------------------------------------------------------------
// Epsilon-graded series

class EpsSeries {
 public:
  EpsSeries() = default;
  EpsSeries(VarSpace sp, const TruncSpec& tr) : space_(sp), trunc_(tr) {}
  static EpsSeries constant(VarSpace sp, const TruncSpec& tr, const Coeff& c, int eps_pow = 0) {
    EpsSeries e(sp, tr);
    e.add_layer(eps_pow, TruncatedSeries::constant(sp, tr, c));
    return e;
  }
  static EpsSeries from_layer(int eps_pow, const TruncatedSeries& s) {
    EpsSeries e(s.space(), s.trunc());
    e.add_layer(eps_pow, s);
    return e;
  }

  VarSpace space() const { return space_; }
  const TruncSpec& trunc() const { return trunc_; }
  const std::map<int, TruncatedSeries>& layers() const { return layers_; }
  bool is_zero() const { return layers_.empty(); }

  const TruncatedSeries* layer(int e) const {
    auto it = layers_.find(e);
    return it == layers_.end() ? nullptr : &it->second;
  }
  TruncatedSeries layer_or_zero(int e) const {
    auto it = layers_.find(e);
    return it == layers_.end() ? TruncatedSeries(space_, trunc_) : it->second;
  }
  int min_eps() const { return layers_.empty() ? 0 : layers_.begin()->first; }
  int max_eps() const { return layers_.empty() ? 0 : layers_.rbegin()->first; }

  void add_layer(int e, const TruncatedSeries& s);

  EpsSeries& operator+=(const EpsSeries& o);
  EpsSeries& operator-=(const EpsSeries& o);
  friend EpsSeries operator+(EpsSeries l, const EpsSeries& r) { l += r; return l; }
  friend EpsSeries operator-(EpsSeries l, const EpsSeries& r) { l -= r; return l; }
  friend EpsSeries operator*(const EpsSeries& l, const EpsSeries& r);
  EpsSeries& operator*=(const EpsSeries& o) { *this = *this * o; return *this; }

  EpsSeries scaled(const Coeff& c) const;
  EpsSeries times_mono(const Mono& m, const Coeff& c = Coeff(1)) const;
  EpsSeries shifted_eps(int de) const;  // multiply by eps^de
  EpsSeries derivative(Var v) const;

  EpsSeries exp_series() const;  // zero constant term in every layer
  EpsSeries log_series() const;  // constant term 1 at eps^0, 0 elsewhere

  // eps -> sqrt(r)*eps with r rational: layer e scales by r^{e/2};
  // odd layers must be absent (IrrationalResidue otherwise)
  EpsSeries eps_rescaled(const Rat& r) const;

  friend bool operator==(const EpsSeries& l, const EpsSeries& r) {
    return l.space_ == r.space_ && l.layers_ == r.layers_;
  }

  std::string str() const;

 private:
  VarSpace space_ = VarSpace::T_SPACE;
  TruncSpec trunc_;
  std::map<int, TruncatedSeries> layers_;
};

struct IrrationalResidue : std::runtime_error {
  explicit IrrationalResidue(const std::string& w) : std::runtime_error(w) {}
};

// a(xi + mu*eps, ...): Taylor shift in x by a rational multiple of eps
EpsSeries shift_x(const EpsSeries& a, const Rat& mu);

// ---------------------------------------------------------------------------
// Canonical serialization (cache files, golden tests)

std::string serialize(const TruncatedSeries& s);
std::string serialize(const EpsSeries& s);
TruncatedSeries deserialize_series(const std::string& text, VarSpace sp, const TruncSpec& tr);
EpsSeries deserialize_eps(const std::string& text, VarSpace sp, const TruncSpec& tr);

}  // namespace hgue
