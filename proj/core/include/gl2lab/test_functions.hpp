#pragma once

#include <optional>
#include <string>

#include "gl2lab/cyclotomic.hpp"
#include "gl2lab/extended.hpp"
#include "gl2lab/finite_rep.hpp"
#include "gl2lab/local_matrix.hpp"
#include "gl2lab/rational.hpp"
#include "gl2lab/rational_function.hpp"

namespace gl2lab {

/// Case data of a semisimple gamma: valuations of det and trace, ell, and the
/// unit eigenvalue modulo p^n.
struct GammaInvariants {
  int v_det = 0;
  ExtendedInt v_tr = 0;
  /// v_tr is only a lower bound (trace vanishes at the working precision).
  bool v_tr_lower_bound = false;
  /// Present iff v_tr = 0 and v_det >= 1.
  std::optional<ExtendedInt> ell;
  /// ell is only a lower bound (capped at the level n).
  bool ell_lower_bound = false;
  /// Unit eigenvalue modulo p^n, present with ell when n >= 1.
  std::optional<GaloisRingElement> t2_residue;

  /// Reads the invariants off gamma at level n.
  static GammaInvariants of(const LocalMatrix& gamma, int n);
  std::string to_string() const;
};

enum class PhiBranch { OffSupport, TraceNonUnit, EllBelow, EllAtLeast };

std::string to_string(PhiBranch b);

/// Which clause of the definition of phi_{p,n} applies to g, with k(g) and
/// min(ell(g), n - k(g)) where relevant.
struct PhiCase {
  PhiBranch branch = PhiBranch::OffSupport;
  int k = 0;
  std::int64_t ell_capped = 0;
};

PhiCase classify_phi(const LocalMatrix& g, int n);

/// phi_{p,0}: 1/(q-1) on GL2(Z_q) diag(p,1) GL2(Z_q), else 0.
Rational phi_p0(const LocalMatrix& g);
/// phi_{p,n}, n >= 1, by its four clauses.
Rational phi_pn(const LocalMatrix& g, int n);
/// The deformation phi_{p,n,t}; its value at t = q is phi_{p,n}.
RationalFunctionT phi_pnt(const LocalMatrix& g, int n);

/// Branch values as functions of (k, ell) for a given q and n.
Rational phi_value(const PhiCase& c, long long q, int n);
RationalFunctionT phi_value_t(const PhiCase& c, long long q, int n);

/// Closed form of c(gamma): (1+q)(1-q^n) if v_det = 1, v_tr >= 1;
/// q^{2n} - q^{2n-2} if v_det = 1, v_tr = 0, ell >= n; 0 otherwise.
Integer c_closed(const GammaInvariants& inv, int n, long long q);

/// c_r(gamma, h) through the principal-series characters of GL2(Z/p^n):
/// 0 unless v_det = r and v_tr >= 0; for v_tr = 0 the character sum
/// sum_chi tr(h | Ind chi) chi(t2)^{-1}; otherwise tr(h | 1) - p^r tr(h | St).
/// DomainError when t2 is missing or not in Z/p^n.
CyclotomicValue c_r_char(const GammaInvariants& inv, const ClassFunction& h, const PrincipalSeries& ps, int r);

}  // namespace gl2lab
