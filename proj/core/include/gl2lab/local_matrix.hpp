#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gl2lab/extended.hpp"
#include "gl2lab/galois_ring.hpp"
#include "gl2lab/rational.hpp"

namespace gl2lab {

/// Element of Z_q given exactly by integer coordinates in the power basis.
using ExactElement = std::vector<Integer>;

/// A scalar p^shift * value, where value is only known modulo p^accuracy.
/// When `exact` is present it is the exact (unshifted) value, and valuations
/// are read from it instead of from the truncated residue.
struct TruncatedScalar {
  int shift = 0;
  GaloisRingElement value;
  int accuracy = 0;
  std::optional<ExactElement> exact;

  /// Certified v_p; infinity only for an exactly-known zero. PrecisionExhausted otherwise.
  ExtendedInt valuation() const;
  /// min(v_p, cap), certified. PrecisionExhausted if the residue is too short to decide.
  std::int64_t valuation_capped(std::int64_t cap) const;
};

/// g = p^e * M with M a primitive integral 2x2 matrix over Z_q, known modulo
/// p^precision. Entries are stored row-major and reduced to [0, p^precision).
///
/// Matrices built from integer data keep an exact copy of M; operations that
/// divide (inverse, products that lose a power of p) drop it.
class LocalMatrix {
 public:
  using Entries = std::array<GaloisRingElement, 4>;
  using ExactEntries = std::array<ExactElement, 4>;

  /// Exact integer data: each entry is a coefficient vector (at most r entries).
  /// Common powers of p are moved into the exponent. DomainError for singular input.
  static LocalMatrix from_exact(ContextPtr ctx, const ExactEntries& entries, int exponent = 0);
  /// Integer entries a, b / c, d (prime-subring constants).
  static LocalMatrix from_ints(ContextPtr ctx, long long a, long long b, long long c, long long d, int exponent = 0);
  /// Ring data known modulo p^precision. The primitive part is extracted.
  static LocalMatrix from_ring(const Entries& entries, int exponent, int precision);
  static LocalMatrix identity(ContextPtr ctx);

  const ContextPtr& context() const { return ctx_; }
  int exponent() const { return exponent_; }
  int precision() const { return precision_; }
  bool is_exact() const { return exact_.has_value(); }
  const GaloisRingElement& entry(int row, int col) const { return m_[2 * row + col]; }
  const Entries& entries() const { return m_; }
  const std::optional<ExactEntries>& exact_entries() const { return exact_; }

  LocalMatrix operator*(const LocalMatrix& o) const;
  LocalMatrix inverse() const;
  /// Entrywise sigma^k.
  LocalMatrix frobenius(int k = 1) const;
  /// p^j * g.
  LocalMatrix times_p(int j) const;
  /// Working precision lowered to `precision` (entries truncated).
  LocalMatrix with_precision(int precision) const;

  TruncatedScalar trace() const;
  TruncatedScalar determinant() const;
  /// 1 - tr g + det g.
  TruncatedScalar ell_quantity() const;

  /// True when the exponents match and the primitive parts agree modulo the common precision.
  bool same_as(const LocalMatrix& o) const;
  /// Integral (exponent >= 0).
  bool is_integral() const { return exponent_ >= 0; }

  /// "p^e * [[a,b],[c,d]]" with centered residues.
  std::string to_string() const;

 private:
  LocalMatrix() = default;
  void normalize_truncated();

  ContextPtr ctx_;
  int exponent_ = 0;
  int precision_ = 0;
  Entries m_;
  std::optional<ExactEntries> exact_;
};

/// Parses "[[a,b],[c,d]]" with an optional "p^e *" prefix; an entry is an
/// integer or a parenthesized coefficient list "(c0,c1,...)". ParseError on bad input.
LocalMatrix parse_local_matrix(ContextPtr ctx, std::string_view text);

/// Exact coefficient helpers for ExactElement in Z[x]/f.
namespace exact {
ExactElement add(const ExactElement& a, const ExactElement& b);
ExactElement sub(const ExactElement& a, const ExactElement& b);
ExactElement mul(const LocalContext& ctx, const ExactElement& a, const ExactElement& b);
ExactElement scale(const ExactElement& a, const Integer& k);
bool is_zero(const ExactElement& a);
/// v_p; callers check is_zero first.
int valuation(const ExactElement& a, int p);
GaloisRingElement to_ring(ContextPtr ctx, const ExactElement& a);
}  // namespace exact

/// p^shift * value as an integral element together with its accuracy.
/// Requires shift + v_p(value) >= 0 (DomainError otherwise).
std::pair<GaloisRingElement, int> integral_value(const TruncatedScalar& s);

// Module-level operations on GL2(Q_q).

/// Minimal k with p^k g integral (may be negative).
int k_of(const LocalMatrix& g);
/// v_p(1 - tr g + det g); infinity when that quantity is exactly zero.
/// DomainError unless v_p(det g) >= 1 and v_p(tr g) = 0.
ExtendedNat ell_of(const LocalMatrix& g);
/// min(ell(g), cap), needing only precision up to cap. Same domain as ell_of.
std::int64_t ell_capped(const LocalMatrix& g, std::int64_t cap);
/// delta * sigma(delta) * ... * sigma^{r-1}(delta).
LocalMatrix norm_map(const LocalMatrix& delta);
/// h^{-1} g, computed as adj(h) g / det(h) so that only the unit part of det(h) costs accuracy.
LocalMatrix left_quotient(const LocalMatrix& h, const LocalMatrix& g);
/// h^{-1} * delta * sigma(h).
LocalMatrix sigma_conjugate(const LocalMatrix& h, const LocalMatrix& delta);
/// Unit root of x^2 - (tr g) x + det g modulo p^level, in a context of precision `level`.
/// DomainError unless v_p(tr g) = 0 and v_p(det g) >= 1.
GaloisRingElement unit_eigenvalue(const LocalMatrix& g, int level);

}  // namespace gl2lab
