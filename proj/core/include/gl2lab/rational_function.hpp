#pragma once

#include <string>
#include <vector>

#include "gl2lab/rational.hpp"

namespace gl2lab {

/// Polynomial in t with rational coefficients, lowest degree first, no trailing zeros.
using PolyQ = std::vector<Rational>;

PolyQ poly_add(const PolyQ& a, const PolyQ& b);
PolyQ poly_sub(const PolyQ& a, const PolyQ& b);
PolyQ poly_mul(const PolyQ& a, const PolyQ& b);
void poly_trim(PolyQ& a);
Rational poly_eval(const PolyQ& a, const Rational& t);

/// numerator(t) / (q - t^2)^den_exp.
class RationalFunctionT {
 public:
  RationalFunctionT() = default;
  RationalFunctionT(long long q, PolyQ numerator, int den_exp = 0);

  static RationalFunctionT constant(long long q, const Rational& c);
  /// c * t^k.
  static RationalFunctionT monomial(long long q, const Rational& c, int k);

  long long q() const { return q_; }
  const PolyQ& numerator() const { return num_; }
  int den_exp() const { return den_exp_; }
  bool is_zero() const { return num_.empty(); }

  RationalFunctionT& operator+=(const RationalFunctionT& o);
  RationalFunctionT& operator-=(const RationalFunctionT& o);
  RationalFunctionT& operator*=(const RationalFunctionT& o);
  RationalFunctionT& operator*=(const Rational& k);
  friend RationalFunctionT operator+(RationalFunctionT a, const RationalFunctionT& b) { return a += b; }
  friend RationalFunctionT operator-(RationalFunctionT a, const RationalFunctionT& b) { return a -= b; }
  friend RationalFunctionT operator*(RationalFunctionT a, const RationalFunctionT& b) { return a *= b; }
  friend RationalFunctionT operator*(RationalFunctionT a, const Rational& k) { return a *= k; }
  /// Cross-multiplied polynomial equality.
  friend bool operator==(const RationalFunctionT& a, const RationalFunctionT& b);

  /// Value at t; DomainError at a pole.
  Rational evaluate(const Rational& t) const;
  /// "(num)/(q - t^2)^e".
  std::string to_string() const;

 private:
  void canonicalize();

  long long q_ = 0;
  PolyQ num_;
  int den_exp_ = 0;
};

}  // namespace gl2lab
