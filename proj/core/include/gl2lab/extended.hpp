#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace gl2lab {

/// An integer or +infinity. Used for valuations (v_p of zero is infinite)
/// and for the congruence depth ell(g), which is infinite when the unit
/// eigenvalue is exactly 1.
class ExtendedInt {
 public:
  constexpr ExtendedInt() = default;
  constexpr ExtendedInt(std::int64_t v) : value_(v) {}  // NOLINT(implicit)

  static constexpr ExtendedInt infinity() {
    ExtendedInt e;
    e.value_.reset();
    return e;
  }

  constexpr bool is_infinite() const { return !value_.has_value(); }
  constexpr bool is_finite() const { return value_.has_value(); }
  /// Finite value; callers check is_finite() first.
  constexpr std::int64_t value() const { return *value_; }

  friend constexpr bool operator==(const ExtendedInt& a, const ExtendedInt& b) {
    return a.value_ == b.value_;
  }
  friend constexpr std::strong_ordering operator<=>(const ExtendedInt& a, const ExtendedInt& b) {
    if (a.is_infinite() || b.is_infinite()) {
      if (a.is_infinite() && b.is_infinite()) return std::strong_ordering::equal;
      return a.is_infinite() ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    return *a.value_ <=> *b.value_;
  }

  std::string to_string() const { return is_infinite() ? "inf" : std::to_string(*value_); }

 private:
  std::optional<std::int64_t> value_ = 0;
};

/// Non-negative use of ExtendedInt (k and ell). The type does not enforce the sign.
using ExtendedNat = ExtendedInt;

inline std::ostream& operator<<(std::ostream& os, const ExtendedInt& e) { return os << e.to_string(); }

}  // namespace gl2lab
