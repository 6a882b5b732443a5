#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "gl2lab/local_matrix.hpp"
#include "gl2lab/rational.hpp"

namespace gl2lab {

/// Homothety class of a Z_q-lattice, represented by the unique sublattice of
/// the standard lattice with cyclic quotient, in column Hermite form
/// [[p^a, c], [0, p^b]] with c reduced mod p^a and min(a, b, v(c)) = 0.
/// The distance to the base vertex is a + b.
struct TreeVertex {
  int a = 0;
  int b = 0;
  /// Power-basis coefficients of c, each in [0, p^a).
  std::vector<std::int64_t> c;

  int distance() const { return a + b; }
  friend auto operator<=>(const TreeVertex&, const TreeVertex&) = default;
  friend bool operator==(const TreeVertex&, const TreeVertex&) = default;
  std::string to_string() const;
};

/// The Hermite basis H as an exact matrix.
LocalMatrix hermite_basis(const ContextPtr& ctx, const TreeVertex& v);

/// Vertex of the lattice spanned by the columns of g.
TreeVertex vertex_of(const LocalMatrix& g);
/// Vertex of the lattice spanned by the given integral columns (at least one
/// invertible 2x2 minor), known modulo p^accuracy.
TreeVertex vertex_of_columns(const std::vector<std::array<GaloisRingElement, 2>>& columns, int accuracy);

/// g . v.
TreeVertex act(const LocalMatrix& g, const TreeVertex& v);
/// The q + 1 neighbors of v.
std::vector<TreeVertex> neighbors(const ContextPtr& ctx, const TreeVertex& v);
/// Neighbor of v one step closer to the base vertex (v must not be the base vertex).
TreeVertex parent(const ContextPtr& ctx, const TreeVertex& v);

/// All vertices at distance <= depth, ordered by distance then Hermite data.
/// ResourceLimit above the element cap.
std::vector<TreeVertex> enumerate_vertices(const ContextPtr& ctx, int depth);

/// gamma Lambda_v is contained in Lambda_v.
bool stabilizes(const LocalMatrix& gamma, const TreeVertex& v);

struct FixedSetReport {
  std::string gamma;
  int depth = 0;
  std::vector<TreeVertex> stabilized;
  TreeVertex nearest;
  int k_tree = 0;
  /// Exactly one stabilized vertex at distance k_tree.
  bool nearest_unique = false;
  /// The stabilized set inside the ball induces a connected subtree.
  bool connected = false;
};

/// Stabilized vertices within the given depth and the nearest one.
/// NotStabilizable when none is found.
FixedSetReport fixed_set(const LocalMatrix& gamma, int depth);

/// Number of points of P^1(F_q) fixed by gamma mod p (gamma integral, v_p(det) = 1).
int stabilized_line_count(const LocalMatrix& gamma);

struct ShellTally {
  int distance = 0;
  long long vertices = 0;
  /// Weight of one vertex at this distance.
  Rational weight;
  Rational phi_value;
  Rational contribution;
};

struct OrbitalRatio {
  /// O_gamma(phi_{p,n}) / O_gamma(phi_{p,0}) = (q - 1) * weighted_sum.
  Rational ratio;
  Rational weighted_sum;
  std::string branch;
  std::vector<ShellTally> shells;
  /// Set when gamma is not conjugate to an integral matrix; the ratio is then 0.
  std::optional<std::string> flag;
};

/// Weighted vertex sum over the ball of radius n - 1: weight 1 at the base
/// vertex and (non-stabilized neighbors of v0 under the companion matrix)/(q+1)
/// elsewhere, times the phi_{p,n} branch value at k = distance.
/// DomainError unless v_p(det gamma) = 1.
OrbitalRatio orbital_ratio(const LocalMatrix& gamma, int n);

}  // namespace gl2lab
