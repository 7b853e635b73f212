#include "hgue/series.hpp"

#include <algorithm>
#include <sstream>

namespace hgue {

std::string var_name(Var v) {
  switch (v.fam()) {
    case Fam::T: return "t" + std::to_string(v.index());
    case Fam::SBAR: return "sb" + std::to_string(v.index());
    case Fam::SRAW: return "s" + std::to_string(v.index());
    case Fam::XI: return "xi";
  }
  return "?";
}

bool space_allows(VarSpace s, Fam f) {
  switch (s) {
    case VarSpace::T_SPACE: return f == Fam::T;
    case VarSpace::XS_SPACE: return f == Fam::XI || f == Fam::SBAR;
    case VarSpace::XRAW_SPACE: return f == Fam::XI || f == Fam::SRAW;
  }
  return false;
}

std::string space_name(VarSpace s) {
  switch (s) {
    case VarSpace::T_SPACE: return "T";
    case VarSpace::XS_SPACE: return "XS";
    case VarSpace::XRAW_SPACE: return "XRAW";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Mono

Mono Mono::times(const Mono& o) const {
  Mono r;
  r.vp.reserve(vp.size() + o.vp.size());
  std::size_t i = 0, j = 0;
  while (i < vp.size() && j < o.vp.size()) {
    if (vp[i].first < o.vp[j].first) r.vp.push_back(vp[i++]);
    else if (o.vp[j].first < vp[i].first) r.vp.push_back(o.vp[j++]);
    else {
      r.vp.push_back({vp[i].first, vp[i].second + o.vp[j].second});
      ++i; ++j;
    }
  }
  while (i < vp.size()) r.vp.push_back(vp[i++]);
  while (j < o.vp.size()) r.vp.push_back(o.vp[j++]);
  return r;
}

std::optional<Mono> Mono::div_var(Var v) const {
  Mono r;
  bool found = false;
  for (auto& [w, p] : vp) {
    if (w == v) {
      found = true;
      if (p > 1) r.vp.push_back({w, p - 1});
    } else {
      r.vp.push_back({w, p});
    }
  }
  if (!found) return std::nullopt;
  return r;
}

std::string Mono::str() const {
  if (vp.empty()) return "1";
  std::string s;
  for (auto& [v, p] : vp) {
    if (!s.empty()) s += "*";
    s += var_name(v);
    if (p > 1) s += "^" + std::to_string(p);
  }
  return s;
}

// ---------------------------------------------------------------------------
// TruncatedSeries

void TruncatedSeries::check_compatible(const TruncatedSeries& o) const {
  if (space_ != o.space_)
    throw SpaceMismatch("series spaces differ: " + space_name(space_) + " vs " + space_name(o.space_));
}

void TruncatedSeries::add_term(const Mono& m, const Coeff& c) {
  if (c.is_zero() || !trunc_.keeps(m)) return;
  for (auto& [v, p] : m.vp)
    if (!space_allows(space_, v.fam()))
      throw SpaceMismatch("variable " + var_name(v) + " not in space " + space_name(space_));
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& o) {
  check_compatible(o);
  for (auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& o) {
  check_compatible(o);
  for (auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

TruncatedSeries operator*(const TruncatedSeries& l, const TruncatedSeries& r) {
  l.check_compatible(r);
  TruncatedSeries out(l.space_, l.trunc_);
  for (auto& [ml, cl] : l.terms_) {
    for (auto& [mr, cr] : r.terms_) {
      Mono m = ml.times(mr);
      if (!out.trunc_.keeps(m)) continue;
      out.add_term(m, cl * cr);
    }
  }
  return out;
}

TruncatedSeries TruncatedSeries::scaled(const Coeff& c) const {
  TruncatedSeries out(space_, trunc_);
  if (c.is_zero()) return out;
  for (auto& [m, k] : terms_) out.add_term(m, k * c);
  return out;
}

TruncatedSeries TruncatedSeries::times_mono(const Mono& m, const Coeff& c) const {
  TruncatedSeries out(space_, trunc_);
  if (c.is_zero()) return out;
  for (auto& [mm, k] : terms_) out.add_term(mm.times(m), k * c);
  return out;
}

TruncatedSeries TruncatedSeries::derivative(Var v) const {
  TruncatedSeries out(space_, trunc_);
  for (auto& [m, c] : terms_) {
    uint32_t p = m.power_of(v);
    if (!p) continue;
    out.add_term(*m.div_var(v), Rat(p) * c);
  }
  return out;
}

TruncatedSeries TruncatedSeries::integral(Var v) const {
  TruncatedSeries out(space_, trunc_);
  for (auto& [m, c] : terms_) {
    uint32_t p = m.power_of(v);
    out.add_term(m.times_var(v), Rat(1, p + 1) * c);
  }
  return out;
}

TruncatedSeries TruncatedSeries::pow(long e) const {
  if (e < 0) throw std::invalid_argument("pow: negative exponent; use inverse()");
  TruncatedSeries acc = TruncatedSeries::constant(space_, trunc_, Coeff(1));
  TruncatedSeries base = *this;
  while (e) {
    if (e & 1) acc *= base;
    base = (e >>= 1) ? base * base : base;
  }
  return acc;
}

// bound on how many times a constant-free series can be multiplied into
// itself before truncation kills everything
static long nilpotency_bound(const TruncSpec& t) {
  return t.max_t_degree + t.max_s_degree + t.max_xi_degree + 3;
}

TruncatedSeries TruncatedSeries::inverse() const {
  Coeff c0 = constant_term();
  if (c0.z != 0 || c0.a == 0) throw BadConstantTerm("inverse wants a unit rational constant term");
  TruncatedSeries y = *this;
  y.add_term(Mono::one(), -c0);
  y = y.scaled(Coeff(Rat(-1) / c0.a));  // now series = c0 (1 - y)
  TruncatedSeries acc = TruncatedSeries::constant(space_, trunc_, Coeff(1));
  TruncatedSeries pw = acc;
  long cap = nilpotency_bound(trunc_);
  for (long n = 1; n <= cap; ++n) {
    pw *= y;
    if (pw.is_zero()) break;
    acc += pw;
  }
  return acc.scaled(Coeff(Rat(1) / c0.a));
}

TruncatedSeries TruncatedSeries::exp_series() const {
  if (!constant_term().is_zero()) throw BadConstantTerm("exp wants zero constant term");
  TruncatedSeries acc = TruncatedSeries::constant(space_, trunc_, Coeff(1));
  TruncatedSeries term = acc;
  long cap = nilpotency_bound(trunc_);
  for (long n = 1; n <= cap; ++n) {
    term = term * *this;
    term = term.scaled(Coeff(Rat(1, n)));
    if (term.is_zero()) break;
    acc += term;
  }
  return acc;
}

TruncatedSeries TruncatedSeries::log_series() const {
  if (constant_term() != Coeff(1)) throw BadConstantTerm("log wants constant term 1");
  TruncatedSeries y = *this;
  y.add_term(Mono::one(), Coeff(-1));
  TruncatedSeries acc(space_, trunc_);
  TruncatedSeries pw = TruncatedSeries::constant(space_, trunc_, Coeff(1));
  long cap = nilpotency_bound(trunc_);
  for (long n = 1; n <= cap; ++n) {
    pw *= y;
    if (pw.is_zero()) break;
    acc += pw.scaled(Coeff(Rat((n % 2) ? 1 : -1, n)));
  }
  return acc;
}

TruncatedSeries TruncatedSeries::coeff_of(Fam f, const Mono& fpart) const {
  TruncatedSeries out(space_, trunc_);
  for (auto& [m, c] : terms_) {
    Mono in_f, rest;
    for (auto& [v, p] : m.vp)
      (v.fam() == f ? in_f : rest).vp.push_back({v, p});
    if (in_f == fpart) out.add_term(rest, c);
  }
  return out;
}

std::string TruncatedSeries::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (auto& [m, c] : terms_) {
    if (!s.empty()) s += " + ";
    s += "(" + c.str() + ")*" + m.str();
  }
  return s;
}

TruncatedSeries series_arith(const TruncatedSeries& a, const TruncatedSeries& b, ArithOp op) {
  switch (op) {
    case ArithOp::ADD: return a + b;
    case ArithOp::SUB: return a - b;
    case ArithOp::MUL: return a * b;
  }
  throw std::logic_error("bad op");
}

TruncatedSeries series_exp_log(const TruncatedSeries& a, ExpLogOp op) {
  return op == ExpLogOp::EXP ? a.exp_series() : a.log_series();
}

// ---------------------------------------------------------------------------
// EpsSeries

void EpsSeries::add_layer(int e, const TruncatedSeries& s) {
  if (s.is_zero() || e > trunc_.eps_max()) return;
  auto it = layers_.find(e);
  if (it == layers_.end()) {
    layers_.emplace(e, s);
  } else {
    it->second += s;
    if (it->second.is_zero()) layers_.erase(it);
  }
}

EpsSeries& EpsSeries::operator+=(const EpsSeries& o) {
  for (auto& [e, s] : o.layers_) add_layer(e, s);
  return *this;
}

EpsSeries& EpsSeries::operator-=(const EpsSeries& o) {
  for (auto& [e, s] : o.layers_) add_layer(e, s.scaled(Coeff(-1)));
  return *this;
}

EpsSeries operator*(const EpsSeries& l, const EpsSeries& r) {
  EpsSeries out(l.space_, l.trunc_);
  for (auto& [el, sl] : l.layers_) {
    for (auto& [er, sr] : r.layers_) {
      if (el + er > out.trunc_.eps_max()) continue;
      out.add_layer(el + er, sl * sr);
    }
  }
  return out;
}

EpsSeries EpsSeries::scaled(const Coeff& c) const {
  EpsSeries out(space_, trunc_);
  for (auto& [e, s] : layers_) out.add_layer(e, s.scaled(c));
  return out;
}

EpsSeries EpsSeries::times_mono(const Mono& m, const Coeff& c) const {
  EpsSeries out(space_, trunc_);
  for (auto& [e, s] : layers_) out.add_layer(e, s.times_mono(m, c));
  return out;
}

EpsSeries EpsSeries::shifted_eps(int de) const {
  EpsSeries out(space_, trunc_);
  for (auto& [e, s] : layers_) out.add_layer(e + de, s);
  return out;
}

EpsSeries EpsSeries::derivative(Var v) const {
  EpsSeries out(space_, trunc_);
  for (auto& [e, s] : layers_) out.add_layer(e, s.derivative(v));
  return out;
}

static long eps_nilpotency_bound(const TruncSpec& t) {
  return t.max_t_degree + t.max_s_degree + t.max_xi_degree + (t.eps_max() - t.eps_min()) + 4;
}

EpsSeries EpsSeries::exp_series() const {
  for (auto& [e, s] : layers_)
    if (!s.constant_term().is_zero())
      throw BadConstantTerm("eps exp wants zero constant term in every layer (eps^" + std::to_string(e) + ")");
  EpsSeries acc = EpsSeries::constant(space_, trunc_, Coeff(1));
  EpsSeries term = acc;
  long cap = eps_nilpotency_bound(trunc_);
  for (long n = 1; n <= cap; ++n) {
    term = term * *this;
    term = term.scaled(Coeff(Rat(1, n)));
    if (term.is_zero()) return acc;
    acc += term;
  }
  throw std::runtime_error("eps exp did not terminate within the truncation");
}

EpsSeries EpsSeries::log_series() const {
  EpsSeries y = *this;
  y -= EpsSeries::constant(space_, trunc_, Coeff(1));
  for (auto& [e, s] : y.layers_)
    if (!s.constant_term().is_zero() && e <= 0)
      throw BadConstantTerm("eps log wants constant term 1 (offending eps^" + std::to_string(e) + ")");
  EpsSeries acc(space_, trunc_);
  EpsSeries pw = EpsSeries::constant(space_, trunc_, Coeff(1));
  long cap = eps_nilpotency_bound(trunc_);
  for (long n = 1; n <= cap; ++n) {
    pw = pw * y;
    if (pw.is_zero()) return acc;
    acc += pw.scaled(Coeff(Rat((n % 2) ? 1 : -1, n)));
  }
  throw std::runtime_error("eps log did not terminate within the truncation");
}

EpsSeries EpsSeries::eps_rescaled(const Rat& r) const {
  EpsSeries out(space_, trunc_);
  for (auto& [e, s] : layers_) {
    if (e % 2 != 0)
      throw IrrationalResidue("eps rescale by sqrt(" + r.get_str() + ") hits odd eps power " + std::to_string(e));
    out.add_layer(e, s.scaled(Coeff(rat_pow(r, e / 2))));
  }
  return out;
}

std::string EpsSeries::str() const {
  if (layers_.empty()) return "0";
  std::string s;
  for (auto& [e, lay] : layers_) {
    if (!s.empty()) s += "\n";
    s += "eps^" + std::to_string(e) + ": " + lay.str();
  }
  return s;
}

EpsSeries shift_x(const EpsSeries& a, const Rat& mu) {
  if (mu == 0) return a;
  // a(xi + mu*eps) = sum_n (mu*eps)^n d_xi^n a / n!
  EpsSeries out = a;
  EpsSeries d = a;
  Rat fac = 1;
  int span = a.trunc().eps_max() - a.min_eps() + a.trunc().max_xi_degree + 2;
  for (int n = 1; n <= span; ++n) {
    d = d.derivative(var_xi);
    if (d.is_zero()) break;
    fac *= Rat(n);
    EpsSeries term = d.shifted_eps(n).scaled(Coeff(rat_pow(mu, n) / fac));
    if (term.is_zero()) break;  // shifted past the eps window; higher n only shift further
    out += term;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Serialization: one record per term, canonical order.
//   <fam>:<index>^<pow>[,...];<p/q>;<p/q>
// Families are printed as their enum digit. Empty monomial prints as "1".

static std::string mono_key(const Mono& m) {
  if (m.is_one()) return "1";
  std::string s;
  for (auto& [v, p] : m.vp) {
    if (!s.empty()) s += ",";
    s += std::to_string(static_cast<int>(v.fam())) + ":" + std::to_string(v.index()) + "^" + std::to_string(p);
  }
  return s;
}

static Mono parse_mono(const std::string& s) {
  Mono m;
  if (s == "1") return m;
  std::stringstream ss(s);
  std::string piece;
  while (std::getline(ss, piece, ',')) {
    auto c = piece.find(':');
    auto h = piece.find('^');
    if (c == std::string::npos || h == std::string::npos) throw std::invalid_argument("bad monomial: " + piece);
    int fam = std::stoi(piece.substr(0, c));
    uint32_t idx = static_cast<uint32_t>(std::stoul(piece.substr(c + 1, h - c - 1)));
    uint32_t pw = static_cast<uint32_t>(std::stoul(piece.substr(h + 1)));
    m.vp.push_back({Var(static_cast<Fam>(fam), idx), pw});
  }
  std::sort(m.vp.begin(), m.vp.end());
  return m;
}

std::string serialize(const TruncatedSeries& s) {
  std::string out;
  for (auto& [m, c] : s.terms())
    out += mono_key(m) + ";" + c.a.get_str() + ";" + c.z.get_str() + "\n";
  return out;
}

std::string serialize(const EpsSeries& s) {
  std::string out;
  for (auto& [e, lay] : s.layers()) {
    out += "E " + std::to_string(e) + "\n";
    out += serialize(lay);
  }
  return out;
}

TruncatedSeries deserialize_series(const std::string& text, VarSpace sp, const TruncSpec& tr) {
  TruncatedSeries s(sp, tr);
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    if (line.empty()) continue;
    auto p1 = line.find(';');
    auto p2 = line.find(';', p1 + 1);
    if (p1 == std::string::npos || p2 == std::string::npos) throw std::invalid_argument("bad record: " + line);
    s.add_term(parse_mono(line.substr(0, p1)),
               Coeff(rat_from_string(line.substr(p1 + 1, p2 - p1 - 1)), rat_from_string(line.substr(p2 + 1))));
  }
  return s;
}

EpsSeries deserialize_eps(const std::string& text, VarSpace sp, const TruncSpec& tr) {
  EpsSeries out(sp, tr);
  std::stringstream ss(text);
  std::string line, chunk;
  int cur = 0;
  bool have = false;
  auto flush = [&] {
    if (have) out.add_layer(cur, deserialize_series(chunk, sp, tr));
    chunk.clear();
  };
  while (std::getline(ss, line)) {
    if (line.rfind("E ", 0) == 0) {
      flush();
      cur = std::stoi(line.substr(2));
      have = true;
    } else if (!line.empty()) {
      chunk += line + "\n";
    }
  }
  flush();
  return out;
}

}  // namespace hgue
