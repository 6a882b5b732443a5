#include "gl2lab/test_functions.hpp"

#include <sstream>

#include "gl2lab/errors.hpp"

namespace gl2lab {

GammaInvariants GammaInvariants::of(const LocalMatrix& gamma, int n) {
  GammaInvariants inv;
  inv.v_det = static_cast<int>(gamma.determinant().valuation().value());
  const TruncatedScalar tr = gamma.trace();
  try {
    inv.v_tr = tr.valuation();
  } catch (const PrecisionExhausted&) {
    inv.v_tr = tr.shift + tr.accuracy;
    inv.v_tr_lower_bound = true;
  }
  if (inv.v_tr == ExtendedInt(0) && inv.v_det >= 1) {
    try {
      inv.ell = ell_of(gamma);
    } catch (const PrecisionExhausted&) {
      inv.ell = ell_capped(gamma, n);
      inv.ell_lower_bound = true;
    }
    if (n >= 1) inv.t2_residue = unit_eigenvalue(gamma, n);
  }
  return inv;
}

std::string GammaInvariants::to_string() const {
  std::ostringstream os;
  os << "v_det=" << v_det << " v_tr=" << (v_tr_lower_bound ? ">=" : "") << v_tr;
  if (ell) os << " ell=" << (ell_lower_bound ? ">=" : "") << *ell;
  if (t2_residue) os << " t2=" << t2_residue->to_string();
  return os.str();
}

std::string to_string(PhiBranch b) {
  switch (b) {
    case PhiBranch::OffSupport:
      return "off-support";
    case PhiBranch::TraceNonUnit:
      return "trace-nonunit";
    case PhiBranch::EllBelow:
      return "ell-below";
    case PhiBranch::EllAtLeast:
      return "ell-at-least";
  }
  return "unknown";
}

PhiCase classify_phi(const LocalMatrix& g, int n) {
  if (n < 1) throw DomainError("phi_{p,n} needs n >= 1");
  PhiCase c;
  c.k = k_of(g);
  if (g.determinant().valuation_capped(2) != 1) return c;
  const std::int64_t v_tr = g.trace().valuation_capped(1);
  if (v_tr < 0 || c.k > n - 1) return c;
  if (v_tr >= 1) {
    c.branch = PhiBranch::TraceNonUnit;
    return c;
  }
  const int bound = n - c.k;
  c.ell_capped = ell_capped(g, bound);
  c.branch = c.ell_capped < bound ? PhiBranch::EllBelow : PhiBranch::EllAtLeast;
  return c;
}

namespace {

Rational qpow(long long q, long long e) { return Rational(ipow(integer_of(q), static_cast<unsigned long>(e))); }

}  // namespace

Rational phi_value(const PhiCase& c, long long q, int n) {
  switch (c.branch) {
    case PhiBranch::OffSupport:
      return 0;
    case PhiBranch::TraceNonUnit:
      return rational_of(-1 - q);
    case PhiBranch::EllBelow:
      return 1 - qpow(q, 2 * c.ell_capped);
    case PhiBranch::EllAtLeast:
      return 1 + qpow(q, 2 * (n - c.k) - 1);
  }
  return 0;
}

RationalFunctionT phi_value_t(const PhiCase& c, long long q, int n) {
  const Rational qq = rational_of(q);
  switch (c.branch) {
    case PhiBranch::OffSupport:
      return RationalFunctionT(q, {});
    case PhiBranch::TraceNonUnit:
      // -q(1 - t^2)/(q - t^2)
      return RationalFunctionT(q, {-qq, Rational(0), qq}, 1);
    case PhiBranch::EllBelow:
      return RationalFunctionT::constant(q, 1) - RationalFunctionT::monomial(q, 1, static_cast<int>(2 * c.ell_capped));
    case PhiBranch::EllAtLeast: {
      // 1 - (q-1) t^{2(n-k)}/(q - t^2)
      RationalFunctionT frac = RationalFunctionT::monomial(q, qq - 1, 2 * (n - c.k)) *
                               RationalFunctionT(q, {Rational(1)}, 1);
      return RationalFunctionT::constant(q, 1) - frac;
    }
  }
  return RationalFunctionT(q, {});
}

Rational phi_p0(const LocalMatrix& g) {
  if (g.exponent() != 0) return 0;
  if (g.determinant().valuation_capped(2) != 1) return 0;
  return Rational(1) / rational_of(g.context()->q() - 1);
}

Rational phi_pn(const LocalMatrix& g, int n) { return phi_value(classify_phi(g, n), g.context()->q(), n); }

RationalFunctionT phi_pnt(const LocalMatrix& g, int n) {
  return phi_value_t(classify_phi(g, n), g.context()->q(), n);
}

Integer c_closed(const GammaInvariants& inv, int n, long long q) {
  if (inv.v_det != 1) return 0;
  const Integer qz = integer_of(q);
  if (inv.v_tr >= ExtendedInt(1)) return (1 + qz) * (1 - ipow(qz, n));
  if (inv.v_tr == ExtendedInt(0) && inv.ell && *inv.ell >= ExtendedInt(n)) {
    return ipow(qz, 2 * n) - ipow(qz, 2 * n - 2);
  }
  return 0;
}

CyclotomicValue c_r_char(const GammaInvariants& inv, const ClassFunction& h, const PrincipalSeries& ps, int r) {
  if (inv.v_det != r || inv.v_tr < ExtendedInt(0)) return CyclotomicValue(ps.field());
  if (inv.v_tr >= ExtendedInt(1)) return ss_trace_point({true, 0}, h, ps, r);
  if (!inv.t2_residue) throw DomainError("c_r needs the unit eigenvalue when v_tr = 0");
  const GaloisRingElement& t2 = *inv.t2_residue;
  if (!t2.in_prime_subring()) throw DomainError("unit eigenvalue is not in Z/p^n");
  if (t2.context()->precision() < ps.n()) throw DomainError("unit eigenvalue known to lower level than p^n");
  return ss_trace_point({false, t2.coeff(0)}, h, ps, r);
}

}  // namespace gl2lab
