#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gl2lab/finite_group.hpp"
#include "gl2lab/rational.hpp"

namespace gl2lab {

/// Norm map delta sigma(delta) ... sigma^{r-1}(delta) on GL2(GR(p^n, r)).
MatCode finite_norm(const FiniteGL2& g, MatCode delta);
/// Embeds a matrix over Z/p^n into GL2(GR(p^n, r)).
MatCode embed_prime(const FiniteGL2& base, const FiniteGL2& ext, MatCode x);
/// Matrix over GR(p^n, r) with entries in Z/p^n, as an element of the base group; nullopt otherwise.
std::optional<MatCode> restrict_prime(const FiniteGL2& ext, const FiniteGL2& base, MatCode x);

struct SigmaOrbit {
  MatCode rep = 0;
  long long size = 0;
  /// |{h : h^{-1} rep sigma(h) = rep}|, counted directly.
  long long twisted_centralizer = 0;
  /// Conjugacy class of GL2(Z/p^n) containing the norms of the orbit (-1 when none is found).
  int norm_class = -1;
  /// |centralizer in GL2(Z/p^n)| of that class.
  long long norm_centralizer = 0;
  /// Every norm of an orbit member lies in one GL2(GR)-conjugacy class, and
  /// the members whose norm has entries in Z/p^n all land in norm_class.
  bool norms_consistent = false;
};

/// sigma-conjugacy classes of GL2(GR(p^n, r)) and their norm images in GL2(Z/p^n).
struct SigmaOrbitTable {
  int p = 0, r = 0, n = 0;
  FiniteGL2Ptr group;
  FiniteGL2Ptr base;
  std::vector<SigmaOrbit> orbits;
  /// Orbit index of each group element (indexed by code, -1 off the group).
  std::vector<int> orbit_of;
  /// norm_class is a bijection from orbits onto the classes of GL2(Z/p^n).
  bool bijection = false;
  /// orbit size * twisted centralizer = |G| for every orbit.
  bool orbit_stabilizer = false;
  /// twisted centralizer = centralizer of the norm class for every orbit.
  bool centralizers_match = false;
  /// sum over classes gamma of |G| / |centralizer of gamma in GL2(Z/p^n)| = |G|.
  bool counting_identity = false;

  bool all_pass() const {
    bool ok = bijection && orbit_stabilizer && centralizers_match && counting_identity;
    for (const auto& o : orbits) ok = ok && o.norms_consistent;
    return ok;
  }
};

/// Breadth-first sigma-conjugacy orbits over the generators of the group.
/// ResourceLimit when the group exceeds the element cap.
SigmaOrbitTable sigma_orbits(int p, int r, int n);

/// Exactness of 1 -> (Z/p^n[gamma])^x -> (GR[gamma])^x -> (GR[gamma])^x -> (Z/p^n[gamma])^x -> 1
/// with d1(x) = x sigma(x)^{-1} and d2 the norm.
struct ExactSequenceReport {
  long long base_units = 0;
  long long ext_units = 0;
  /// Z/p^n[gamma]^x injects (it is a subset of GR[gamma]^x).
  bool injective = false;
  /// ker d1 = Z/p^n[gamma]^x.
  bool exact_at_first = false;
  /// im d1 = ker d2.
  bool exact_at_middle = false;
  /// im d2 = Z/p^n[gamma]^x.
  bool surjective = false;
  bool all_pass() const { return injective && exact_at_first && exact_at_middle && surjective; }
};

/// gamma is an element of GL2(Z/p^n) (given as a code of `base`).
ExactSequenceReport unit_group_exactness(const FiniteGL2& base, const FiniteGL2& ext, MatCode gamma);

/// Rational-valued class function on GL2(Z/p^j).
using BaseClassFunction = std::function<Rational(MatCode)>;

struct BcUnitReport {
  long long deltas = 0;
  long long coset_size = 0;
  long long failures = 0;
  /// First failing delta, if any.
  std::string counterexample;
  bool pass() const { return failures == 0; }
};

/// For every delta in GL2(GR(p^j, r)): the average of f(N delta u) over u in
/// Gamma(p^k) / Gamma(p^j) equals the average of f(gamma u) over the same
/// quotient of GL2(Z/p^j), gamma a representative of the norm class of delta.
/// f o N is read through the orbit -> class map of the table.
BcUnitReport bc_unit_identity(const SigmaOrbitTable& table, const BaseClassFunction& f, int k);

}  // namespace gl2lab
