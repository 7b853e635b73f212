/*
  Exact rational scalars and the coefficient ring Q + Q*zeta'(-1).

  All arithmetic in the project is exact. zeta'(-1) is adjoined as a formal
  symbol of polynomial degree <= 1: it only ever enters free energies
  linearly, so a coefficient is a pair (a, z) representing a + z*zeta'(-1).
  Identity checks require the z-parts to match; no numeric value is ever
  assigned to the symbol.
*/
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hgue {

using Rat = mpq_class;

inline Rat rat(long num, long den = 1) { Rat r(num, den); r.canonicalize(); return r; }

inline Rat rat_from_string(const std::string& s) {
  Rat r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  r.canonicalize();
  return r;
}

// n! as an exact integer rational
inline Rat factorial(long n) {
  Rat r = 1;
  for (long i = 2; i <= n; ++i) r *= i;
  return r;
}

// (2k-1)!! for 2k-1 >= -1; df_odd(-1) = 1 by convention
inline Rat df_odd(long n) {
  if (n < -1 || n % 2 == 0) throw std::invalid_argument("df_odd wants odd n >= -1");
  Rat r = 1;
  for (long i = n; i >= 3; i -= 2) r *= i;
  return r;
}

inline Rat binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rat(b);
}

// r^e with negative exponents allowed (r != 0 for e < 0)
inline Rat rat_pow(const Rat& r, long e) {
  if (e == 0) return 1;
  bool inv = e < 0;
  unsigned long k = static_cast<unsigned long>(inv ? -e : e);
  Rat base = r, acc = 1;
  while (k) {
    if (k & 1) acc *= base;
    base *= base;
    k >>= 1;
  }
  if (inv) {
    if (acc == 0) throw std::domain_error("rat_pow: zero to negative power");
    acc = 1 / acc;
  }
  return acc;
}

// Coefficient a + z * zeta'(-1). The product of two coefficients with
// nonzero z-parts would have degree 2 in the symbol; that never occurs in
// the computations here and is rejected.
struct Coeff {
  Rat a = 0;
  Rat z = 0;

  Coeff() = default;
  Coeff(const Rat& a_) : a(a_) {}
  Coeff(long n) : a(n) {}
  Coeff(const Rat& a_, const Rat& z_) : a(a_), z(z_) {}

  static Coeff zeta1(const Rat& z) { return Coeff(Rat(0), z); }

  bool is_zero() const { return a == 0 && z == 0; }

  Coeff& operator+=(const Coeff& o) { a += o.a; z += o.z; return *this; }
  Coeff& operator-=(const Coeff& o) { a -= o.a; z -= o.z; return *this; }
  friend Coeff operator+(Coeff l, const Coeff& r) { l += r; return l; }
  friend Coeff operator-(Coeff l, const Coeff& r) { l -= r; return l; }
  friend Coeff operator-(const Coeff& c) { return Coeff(-c.a, -c.z); }

  friend Coeff operator*(const Coeff& l, const Coeff& r) {
    if (l.z != 0 && r.z != 0) throw std::domain_error("zeta'(-1) would appear quadratically");
    return Coeff(l.a * r.a, l.a * r.z + l.z * r.a);
  }
  Coeff& operator*=(const Coeff& o) { *this = *this * o; return *this; }
  friend Coeff operator*(const Rat& l, const Coeff& r) { return Coeff(l * r.a, l * r.z); }

  friend bool operator==(const Coeff& l, const Coeff& r) { return l.a == r.a && l.z == r.z; }
  friend bool operator!=(const Coeff& l, const Coeff& r) { return !(l == r); }

  std::string str() const {
    std::string s = a.get_str();
    if (z != 0) s += " + (" + z.get_str() + ")*zeta'(-1)";
    return s;
  }
};

}  // namespace hgue
