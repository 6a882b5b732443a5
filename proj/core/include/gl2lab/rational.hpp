#pragma once

#include <gmpxx.h>

#include <string>

namespace gl2lab {

using Integer = mpz_class;
using Rational = mpq_class;

/// gmpxx has no long long constructors; long is 64-bit on the supported platforms.
inline Integer integer_of(long long v) { return Integer(static_cast<long>(v)); }
inline Rational rational_of(long long v) { return Rational(static_cast<long>(v)); }

inline Rational make_rational(long long num, long long den = 1) {
  Rational r(Integer(static_cast<long>(num)), Integer(static_cast<long>(den)));
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

/// Integer power with a non-negative exponent.
inline Integer ipow(const Integer& base, unsigned long exp) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

inline long long ipow_ll(long long base, int exp) {
  long long out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

}  // namespace gl2lab
