#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "gl2lab/galois_ring.hpp"

namespace gl2lab {

/// GR(p^n, r) as a finite ring with lookup tables. An element is coded by
/// sum_i c_i (p^n)^i where c_i are its power-basis coefficients.
class FiniteRing {
 public:
  /// ResourceLimit when the ring is too large for tables (|R|^2 entries).
  static std::shared_ptr<const FiniteRing> make(int p, int r, int n);

  int p() const { return ctx_->p(); }
  int r() const { return ctx_->r(); }
  int level() const { return ctx_->precision(); }
  int size() const { return size_; }
  const ContextPtr& context() const { return ctx_; }

  int add(int a, int b) const { return add_[a * size_ + b]; }
  int sub(int a, int b) const { return add_[a * size_ + neg_[b]]; }
  int mul(int a, int b) const { return mul_[a * size_ + b]; }
  int neg(int a) const { return neg_[a]; }
  int frob(int a) const { return frob_[a]; }
  bool is_unit(int a) const { return inv_[a] >= 0; }
  /// Inverse of a unit (-1 for non-units).
  int inv(int a) const { return inv_[a]; }

  int from_int(long long v) const;
  /// Code of an element of the same ring (p, r, n must match).
  int code_of(const GaloisRingElement& x) const;
  GaloisRingElement element(int code) const;
  /// Codes of 1, x, ..., x^{r-1}: an additive generating set over Z/p^n.
  std::vector<int> power_basis() const;
  /// Element lies in Z/p^n; returns its integer value in [0, p^n) or -1.
  int prime_value(int a) const;
  /// Reduction modulo p^j, coded in GR(p^j, r).
  int reduce(int a, int j) const;

 private:
  FiniteRing() = default;
  ContextPtr ctx_;
  int size_ = 0;
  std::vector<int> add_, mul_, neg_, frob_, inv_;
};

using FiniteRingPtr = std::shared_ptr<const FiniteRing>;

/// Matrix code ((a*R + b)*R + c)*R + d for [[a,b],[c,d]].
using MatCode = std::uint32_t;

/// GL2 over a FiniteRing with conjugacy classes.
class FiniteGL2 {
 public:
  static std::shared_ptr<const FiniteGL2> make(FiniteRingPtr ring);
  static std::shared_ptr<const FiniteGL2> make(int p, int r, int n) { return make(FiniteRing::make(p, r, n)); }

  const FiniteRing& ring() const { return *ring_; }
  const FiniteRingPtr& ring_ptr() const { return ring_; }
  /// |R|^4, the size of the code space.
  std::uint32_t code_space() const { return code_space_; }

  MatCode make(int a, int b, int c, int d) const {
    const std::uint32_t R = static_cast<std::uint32_t>(ring_->size());
    return ((static_cast<std::uint32_t>(a) * R + b) * R + c) * R + d;
  }
  std::array<int, 4> entries(MatCode x) const;
  MatCode identity() const { return make(1, 0, 0, 1); }

  MatCode mul(MatCode x, MatCode y) const;
  MatCode inv(MatCode x) const;
  /// Entrywise Frobenius.
  MatCode frob(MatCode x) const;
  int det(MatCode x) const;
  int trace(MatCode x) const;
  bool in_group(MatCode x) const { return class_of_[x] >= 0; }

  /// All group elements in increasing code order.
  const std::vector<MatCode>& elements() const { return elements_; }
  long long order() const { return static_cast<long long>(elements_.size()); }
  /// Generators: basis transvections, diag(u, 1) for a generating set of units, and the Weyl element.
  const std::vector<MatCode>& generators() const { return gens_; }

  int num_classes() const { return static_cast<int>(class_reps_.size()); }
  /// Class index of a group element.
  int class_of(MatCode x) const { return class_of_[x]; }
  /// Smallest code in each class; classes are numbered in increasing order of representative.
  const std::vector<MatCode>& class_reps() const { return class_reps_; }
  const std::vector<long long>& class_sizes() const { return class_sizes_; }

 private:
  FiniteGL2() = default;
  FiniteRingPtr ring_;
  std::uint32_t code_space_ = 0;
  std::vector<MatCode> elements_;
  std::vector<MatCode> gens_;
  std::vector<int> class_of_;
  std::vector<MatCode> class_reps_;
  std::vector<long long> class_sizes_;
};

using FiniteGL2Ptr = std::shared_ptr<const FiniteGL2>;

/// |GL2(GR(p^n, r))| = q^{4(n-1)} (q^2 - 1)(q^2 - q).
long long gl2_order(int p, int r, int n);

/// The unit group (Z/p^n)^x with its characters. Characters take values
/// zeta_M^e with M = phi(p^n).
class UnitCharacters {
 public:
  UnitCharacters(int p, int n);

  int modulus() const { return modulus_; }
  /// M = phi(p^n).
  int order() const { return order_; }
  const std::vector<int>& units() const { return units_; }
  /// Generators and their orders (one for cyclic groups; -1 and 5 for 2^n, n >= 3).
  const std::vector<int>& generators() const { return gens_; }
  const std::vector<int>& generator_orders() const { return gen_orders_; }
  int count() const { return order_; }
  /// Exponent e with chi_k(u) = zeta_M^e; u a unit residue.
  int exponent(int k, int u) const { return exps_[k][u]; }
  /// Index of the trivial character (always 0).
  static constexpr int kTrivial = 0;

 private:
  int modulus_ = 0;
  int order_ = 0;
  std::vector<int> units_;
  std::vector<int> gens_;
  std::vector<int> gen_orders_;
  std::vector<std::vector<int>> exps_;
};

}  // namespace gl2lab
