#pragma once

#include <array>
#include <string>
#include <vector>

#include "gl2lab/finite_group.hpp"
#include "gl2lab/rational.hpp"

namespace gl2lab {

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over F_q, coefficients as field codes.
struct WeierstrassCurve {
  std::array<int, 5> a{};  // a1, a2, a3, a4, a6
  int discriminant = 0;
  int j_invariant = 0;
  long long points = 0;
  /// q + 1 - #E(F_q).
  long long trace = 0;
};

/// Isomorphism (u, r, s, t): x = u^2 x' + r, y = u^3 y' + s u^2 x' + t.
using CurveIsomorphism = std::array<int, 4>;

/// Discriminant of the coefficient tuple.
int weierstrass_discriminant(const FiniteRing& k, const std::array<int, 5>& a);
/// Coefficients of the curve after the substitution (u, r, s, t).
std::array<int, 5> transform_coefficients(const FiniteRing& k, const std::array<int, 5>& a, const CurveIsomorphism& g);

/// E(F_q) with the chord-tangent group law. Points are coded x * q + y; the identity is q^2.
class CurveGroup {
 public:
  CurveGroup(FiniteRingPtr field, const std::array<int, 5>& a);

  int identity() const { return identity_; }
  const std::vector<int>& points() const { return points_; }
  long long order() const { return static_cast<long long>(points_.size()); }
  int add(int P, int Q) const;
  int neg(int P) const;
  int multiple(int P, long long k) const;
  /// Image of a point under the isomorphism (u, r, s, t) from this curve to the transformed one.
  int transport(int P, const CurveIsomorphism& g) const;
  /// Points P with mP = O.
  std::vector<int> torsion(int m) const;

 private:
  FiniteRingPtr k_;
  std::array<int, 5> a_{};
  int q_ = 0;
  int identity_ = 0;
  std::vector<int> points_;
};

/// Ordered pairs (P, Q) of rational points forming a basis of E[m] (0 unless E[m] is rational).
long long count_bases(const CurveGroup& e, int m);

struct CurveClass {
  WeierstrassCurve curve;
  long long orbit_size = 0;
  /// |G| / orbit size.
  long long aut_order = 0;
  /// Automorphisms found by testing every (u, r, s, t) against the representative.
  std::vector<CurveIsomorphism> automorphisms;
};

/// Isomorphism classes of elliptic curves over F_q.
struct Census {
  FiniteRingPtr field;
  long long q = 0;
  /// Number of coefficient tuples with nonzero discriminant.
  long long nonsingular = 0;
  /// (q - 1) q^3.
  long long group_order = 0;
  std::vector<CurveClass> classes;
};

/// Every class exactly once, by orbit enumeration under (u, r, s, t). DomainError unless q is a prime power.
Census enumerate_curves(long long q);

/// #M_m(F_q) points on this class: ordered bases of E[m] over F_q divided by |Aut(E)|.
/// DomainError when gcd(m, q) != 1 or m < 3.
long long level_m_count(const Census& census, const CurveClass& c, int m);
/// No nontrivial automorphism fixes E[m] pointwise (checked by direct action on rational m-torsion).
bool automorphisms_act_freely(const Census& census, const CurveClass& c, int m);
/// #M_m(F_q) counted over raw Weierstrass tuples: #{(tuple, basis)} / |G|.
long long direct_moduli_count(const Census& census, int m);

struct IsogenyClassRecord {
  long long trace = 0;
  std::vector<int> members;
  bool ordinary = false;
  /// Unit root of x^2 - trace x + q modulo p^n (ordinary classes, n >= 1).
  long long unit_root = 0;
};

/// Classes grouped by trace, ascending.
std::vector<IsogenyClassRecord> isogeny_classes(const Census& census, int n);
/// Unit root of x^2 - a x + q modulo p^n; DomainError when p | a.
long long unit_root_mod(long long a, long long q, int p, int n);
/// Traces with a^2 <= 4q that no census curve realizes.
std::vector<long long> unrealized_traces(const Census& census);

struct LefschetzRow {
  long long trace = 0;
  bool ordinary = false;
  long long unit_root = 0;
  /// Level-m points on the isogeny class.
  long long points = 0;
  /// Per-point semisimple trace, character-sum path and fixed-point path.
  Rational per_point;
  Rational per_point_counting;
  Rational contribution;
};

struct LefschetzReport {
  int p = 0, r = 0, n = 0, m = 0;
  long long q = 0;
  std::vector<LefschetzRow> rows;
  Rational total;
  /// #M_m(F_q) from the census and from raw tuples.
  long long moduli_points = 0;
  long long moduli_points_direct = 0;
  bool dual_paths_agree = false;
  bool weil_bound = false;
  /// a_E = 0 mod p  <=>  #E(F_q) = 1 mod p on every class.
  bool supersingular_criteria_agree = false;
  Rational boundary;
};

LefschetzReport ss_lefschetz(int p, int r, int n, int m);

/// |GL2(Z/N)|.
long long gl2_order_mod(long long N);
/// 0 if p^r != 1 mod m, else #({+-U} \ GL2(Z/p^n m)) / (p^{n-1}(p-1)).
Rational boundary_ss_trace(int p, int r, int n, int m);

struct BoundaryEnumeration {
  long long group_order = 0;
  long long points = 0;
  long long packets = 0;
  /// Every inertia packet has p^{n-1}(p-1) points.
  bool uniform_packets = false;
  long long fixed_packets = 0;
};

/// Cusps as {+-U}-orbits on GL2(Z/p^n m), grouped into inertia packets; Frobenius acts
/// through diag(x^{-1}, 1) with x = p^r mod m and x = 1 mod p^n.
BoundaryEnumeration boundary_by_enumeration(int p, int r, int n, int m);

}  // namespace gl2lab
