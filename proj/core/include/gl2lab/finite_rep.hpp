#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gl2lab/cyclotomic.hpp"
#include "gl2lab/finite_group.hpp"

namespace gl2lab {

/// Cyclotomic-valued function on the conjugacy classes of a FiniteGL2.
class ClassFunction {
 public:
  ClassFunction(FiniteGL2Ptr group, CyclotomicFieldPtr field);
  ClassFunction(FiniteGL2Ptr group, CyclotomicFieldPtr field, std::vector<CyclotomicValue> values);

  const FiniteGL2Ptr& group() const { return group_; }
  const CyclotomicFieldPtr& field() const { return field_; }
  const std::vector<CyclotomicValue>& values() const { return values_; }
  const CyclotomicValue& at_class(int c) const { return values_[c]; }
  const CyclotomicValue& operator()(MatCode x) const { return values_[group_->class_of(x)]; }
  void set(int c, CyclotomicValue v) { values_[c] = std::move(v); }

  /// Value at the identity.
  CyclotomicValue degree() const;

  ClassFunction& operator+=(const ClassFunction& o);
  ClassFunction& operator-=(const ClassFunction& o);
  ClassFunction& operator*=(const CyclotomicValue& k);
  friend ClassFunction operator+(ClassFunction a, const ClassFunction& b) { return a += b; }
  friend ClassFunction operator-(ClassFunction a, const ClassFunction& b) { return a -= b; }
  friend bool operator==(const ClassFunction& a, const ClassFunction& b) { return a.values_ == b.values_; }

 private:
  FiniteGL2Ptr group_;
  CyclotomicFieldPtr field_;
  std::vector<CyclotomicValue> values_;
};

/// <f1, f2> = (1/|G|) sum_g f1(g) conj(f2(g)).
CyclotomicValue inner_product(const ClassFunction& f1, const ClassFunction& f2);

/// tr(h | V) = (1/|G|) sum_g h(g) chi_V(g). With this normalization the
/// idempotent of the trivial level subgroup, e = |G| * [identity], has tr(e | V) = dim V.
CyclotomicValue hecke_trace(const ClassFunction& h, const ClassFunction& chi);

/// The normalized idempotent e_Gamma: |G| at the identity class and 0 elsewhere.
ClassFunction identity_idempotent(FiniteGL2Ptr group, CyclotomicFieldPtr field);

/// Principal-series slice of the character theory of GL2(Z/p^n): the
/// characters Ind_B(1 x chi) for every chi of (Z/p^n)^x, the Steinberg
/// character and the Drinfeld permutation character on surjections
/// (Z/p^n)^2 -> Z/p^n. B is the upper-triangular Borel and 1 x chi sends
/// [[a, b], [0, d]] to chi(d).
class PrincipalSeries {
 public:
  PrincipalSeries(int p, int n);

  int p() const { return p_; }
  int n() const { return n_; }
  const FiniteGL2Ptr& group() const { return group_; }
  const CyclotomicFieldPtr& field() const { return field_; }
  const UnitCharacters& unit_characters() const { return chars_; }

  /// chi_k(u) as a root of unity.
  CyclotomicValue chi(int k, int u) const;
  const ClassFunction& trivial() const { return trivial_; }
  const ClassFunction& induced(int k) const { return induced_[k]; }
  const ClassFunction& steinberg() const { return steinberg_; }
  /// Permutation character on surjections, counted directly.
  const ClassFunction& drinfeld() const { return drinfeld_; }

  /// #{v unimodular row : v g = a v}; the trace of g composed with
  /// postcomposition by a^{-1} on the surjection module.
  long long twisted_fixed_surjections(MatCode g, int a) const;
  /// #{points of P^1(Z/p^n) fixed by g}, counted directly.
  long long fixed_lines(MatCode g) const;

 private:
  int p_;
  int n_;
  FiniteGL2Ptr group_;
  UnitCharacters chars_;
  CyclotomicFieldPtr field_;
  ClassFunction trivial_;
  std::vector<ClassFunction> induced_;
  ClassFunction steinberg_;
  ClassFunction drinfeld_;
};

/// Induction formula Ind_B(1 x chi)(g) = (1/|B|) sum_{x : x^{-1} g x in B} chi(d(x^{-1} g x)).
ClassFunction induced_character(const PrincipalSeries& ps, int chi_index);

/// Point type on the special fiber: ordinary with unit Frobenius eigenvalue a (mod p^n), or supersingular.
struct PointKind {
  bool supersingular = false;
  /// Residue of the unit eigenvalue modulo p^n (ordinary points only).
  long long unit_root = 0;
};

/// Semisimple trace through characters: ordinary -> sum_chi tr(h | Ind chi) chi(a)^{-1};
/// supersingular -> tr(h | 1) - p^r tr(h | St). DomainError when a is not a unit.
CyclotomicValue ss_trace_point(const PointKind& kind, const ClassFunction& h, const PrincipalSeries& ps, int r);

/// Same quantity from direct fixed-point counts (surjections fixed by (g, a)
/// and lines of P^1 fixed by g), without the induced characters.
CyclotomicValue ss_trace_point_by_counting(const PointKind& kind, const ClassFunction& h, const PrincipalSeries& ps,
                                           int r);

}  // namespace gl2lab
