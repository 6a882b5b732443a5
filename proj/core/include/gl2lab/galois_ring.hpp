#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "gl2lab/extended.hpp"

namespace gl2lab {

inline constexpr int kMaxDegree = 8;

/// Parameters of the Galois ring GR(p^N, r) = Z_q / p^N with q = p^r.
///
/// The ring is presented as (Z/p^N)[x] / f(x) where f is the smallest monic
/// polynomial of degree r that is irreducible mod p (ordered by the integer
/// sum c_i p^i of its lower coefficients). Frobenius sends the class of x to
/// the Hensel lift of the root of f congruent to x^p.
class LocalContext {
 public:
  /// Throws DomainError unless p is prime, 1 <= r <= kMaxDegree and p^N < 2^62.
  static std::shared_ptr<const LocalContext> make(int p, int r, int precision);

  int p() const { return p_; }
  int r() const { return r_; }
  int precision() const { return precision_; }
  /// Residue field size p^r.
  long long q() const { return q_; }
  /// p^N.
  std::int64_t modulus() const { return pow_p_[precision_]; }
  /// p^j for 0 <= j <= N.
  std::int64_t pow_p(int j) const { return pow_p_.at(j); }

  /// Lower coefficients f_0..f_{r-1} of f = x^r + sum f_i x^i, each in [0, p).
  const std::vector<int>& defining_poly() const { return poly_; }

  /// x^k in the power basis, for 0 <= k <= 2r-2.
  const std::vector<std::array<std::int64_t, kMaxDegree>>& reduction_table() const { return reduce_; }
  /// sigma(x)^i for 0 <= i < r.
  const std::vector<std::array<std::int64_t, kMaxDegree>>& frobenius_table() const { return frob_; }

  /// Same p and r at another precision.
  std::shared_ptr<const LocalContext> with_precision(int precision) const;

  bool same_ring(const LocalContext& other) const {
    return p_ == other.p_ && r_ == other.r_ && precision_ == other.precision_;
  }

 private:
  LocalContext() = default;

  int p_ = 0;
  int r_ = 0;
  int precision_ = 0;
  long long q_ = 0;
  std::vector<std::int64_t> pow_p_;
  std::vector<int> poly_;
  std::vector<std::array<std::int64_t, kMaxDegree>> reduce_;
  std::vector<std::array<std::int64_t, kMaxDegree>> frob_;
};

using ContextPtr = std::shared_ptr<const LocalContext>;

bool is_prime(long long n);

/// Smallest monic irreducible polynomial of degree r over F_p, lower coefficients only.
std::vector<int> smallest_irreducible(int p, int r);

/// Element of GR(p^N, r): coefficients in [0, p^N) with respect to 1, x, ..., x^{r-1}.
class GaloisRingElement {
 public:
  GaloisRingElement() = default;
  explicit GaloisRingElement(ContextPtr ctx);

  static GaloisRingElement from_int(ContextPtr ctx, std::int64_t value);
  /// Coefficients may be any integers; they are reduced mod p^N. Size must not exceed r.
  static GaloisRingElement from_coeffs(ContextPtr ctx, const std::vector<std::int64_t>& coeffs);
  /// The class of x.
  static GaloisRingElement generator(ContextPtr ctx);

  const ContextPtr& context() const { return ctx_; }
  std::int64_t coeff(int i) const { return coeffs_[i]; }
  std::vector<std::int64_t> coeffs() const;

  GaloisRingElement& operator+=(const GaloisRingElement& o);
  GaloisRingElement& operator-=(const GaloisRingElement& o);
  GaloisRingElement& operator*=(const GaloisRingElement& o);
  friend GaloisRingElement operator+(GaloisRingElement a, const GaloisRingElement& b) { return a += b; }
  friend GaloisRingElement operator-(GaloisRingElement a, const GaloisRingElement& b) { return a -= b; }
  friend GaloisRingElement operator*(GaloisRingElement a, const GaloisRingElement& b) { return a *= b; }
  GaloisRingElement operator-() const;
  GaloisRingElement scaled(std::int64_t k) const;

  friend bool operator==(const GaloisRingElement& a, const GaloisRingElement& b) {
    return a.coeffs_ == b.coeffs_;
  }

  bool is_zero() const;
  bool is_one() const;
  /// Reduction mod p is nonzero.
  bool is_unit() const;
  /// All coefficients beyond the constant term vanish.
  bool in_prime_subring() const;

  /// v_p of the element; infinity when it vanishes mod p^N.
  ExtendedInt valuation() const;
  /// min(v_p, cap) without needing to know whether the element is zero.
  int valuation_capped(int cap) const;

  /// Inverse of a unit (Newton iteration from the residue-field inverse). DomainError otherwise.
  GaloisRingElement inverse() const;
  GaloisRingElement pow(std::uint64_t e) const;
  /// Ring automorphism lifting y -> y^p on the residue field.
  GaloisRingElement frobenius() const;
  /// sigma^k.
  GaloisRingElement frobenius(int k) const;
  /// Coefficient-wise reduction mod p^j (j <= N).
  GaloisRingElement truncated(int j) const;
  /// Exact division by p^j. DomainError if some coefficient is not divisible.
  GaloisRingElement divided_by_p(int j) const;
  /// Multiplication by p^j.
  GaloisRingElement times_p(int j) const;
  /// Same coefficients in a context with the same (p, r), reduced to the new precision.
  GaloisRingElement in_context(ContextPtr other) const;

  /// "c0,c1,...,c_{r-1} (mod p^N)".
  std::string to_string() const;
  /// Coefficients only, "(c0,c1)" or "c0" when r = 1; optionally centered in (-p^N/2, p^N/2].
  std::string to_compact_string(bool centered = false) const;

 private:
  ContextPtr ctx_;
  std::array<std::int64_t, kMaxDegree> coeffs_{};
};

/// Ring norm x * sigma(x) * ... * sigma^{r-1}(x).
GaloisRingElement ring_norm(const GaloisRingElement& x);

}  // namespace gl2lab
