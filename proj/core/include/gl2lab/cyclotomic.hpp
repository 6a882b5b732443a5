#pragma once

#include <memory>
#include <string>
#include <vector>

#include "gl2lab/rational.hpp"

namespace gl2lab {

/// The cyclotomic field Q(zeta_M) presented as Q[x] / Phi_M(x).
class CyclotomicField {
 public:
  static std::shared_ptr<const CyclotomicField> make(int order);

  int order() const { return order_; }
  int degree() const { return static_cast<int>(phi_.size()) - 1; }
  /// Integer coefficients of Phi_M, lowest degree first (monic).
  const std::vector<long long>& cyclotomic_poly() const { return phi_; }
  /// zeta^k in the power basis.
  const std::vector<Rational>& zeta_power(int k) const;

 private:
  CyclotomicField() = default;
  int order_ = 1;
  std::vector<long long> phi_;
  std::vector<std::vector<Rational>> powers_;
};

using CyclotomicFieldPtr = std::shared_ptr<const CyclotomicField>;

/// Phi_M by dividing x^M - 1 by Phi_d for every proper divisor d of M.
std::vector<long long> cyclotomic_polynomial(int order);

/// Exact element of Q(zeta_M).
class CyclotomicValue {
 public:
  CyclotomicValue() = default;
  explicit CyclotomicValue(CyclotomicFieldPtr field);
  CyclotomicValue(CyclotomicFieldPtr field, const Rational& value);

  static CyclotomicValue zeta_power(CyclotomicFieldPtr field, int k);

  const CyclotomicFieldPtr& field() const { return field_; }
  const std::vector<Rational>& coeffs() const { return c_; }

  CyclotomicValue& operator+=(const CyclotomicValue& o);
  CyclotomicValue& operator-=(const CyclotomicValue& o);
  CyclotomicValue& operator*=(const CyclotomicValue& o);
  CyclotomicValue& operator*=(const Rational& k);
  friend CyclotomicValue operator+(CyclotomicValue a, const CyclotomicValue& b) { return a += b; }
  friend CyclotomicValue operator-(CyclotomicValue a, const CyclotomicValue& b) { return a -= b; }
  friend CyclotomicValue operator*(CyclotomicValue a, const CyclotomicValue& b) { return a *= b; }
  friend CyclotomicValue operator*(CyclotomicValue a, const Rational& k) { return a *= k; }
  friend bool operator==(const CyclotomicValue& a, const CyclotomicValue& b);

  /// Complex conjugate (zeta -> zeta^{-1}).
  CyclotomicValue conj() const;
  bool is_rational() const;
  /// The rational value; DomainError when not rational.
  Rational to_rational() const;
  /// Rational values print as "a/b", others as "c0 + c1*z + ..." with z = zeta_M.
  std::string to_string() const;

 private:
  CyclotomicFieldPtr field_;
  std::vector<Rational> c_;
};

}  // namespace gl2lab
