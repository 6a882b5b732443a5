#include "gl2lab/bt_tree.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "gl2lab/errors.hpp"
#include "gl2lab/test_functions.hpp"

namespace gl2lab {

std::string TreeVertex::to_string() const {
  std::ostringstream os;
  os << "[[p^" << a << ",";
  if (c.size() == 1) {
    os << c[0];
  } else {
    os << '(';
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
    os << ')';
  }
  os << "],[0,p^" << b << "]]";
  return os.str();
}

LocalMatrix hermite_basis(const ContextPtr& ctx, const TreeVertex& v) {
  const Integer p = integer_of(ctx->p());
  ExactElement c(ctx->r(), Integer(0));
  for (std::size_t i = 0; i < v.c.size(); ++i) c[i] = integer_of(v.c[i]);
  return LocalMatrix::from_exact(ctx, {ExactElement{ipow(p, v.a)}, c, ExactElement{0}, ExactElement{ipow(p, v.b)}});
}

namespace {

using Column = std::array<GaloisRingElement, 2>;

GaloisRingElement unit_part(const GaloisRingElement& x, int v, int accuracy) {
  return x.truncated(accuracy).divided_by_p(v);
}

}  // namespace

TreeVertex vertex_of_columns(const std::vector<Column>& columns, int accuracy) {
  if (columns.size() < 2) throw DomainError("a lattice needs at least two generators");
  std::vector<Column> cols = columns;
  const auto ctx = cols[0][0].context();

  // pivot on the bottom row
  std::size_t pivot = 0;
  int vb = accuracy;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    const int v = cols[i][1].valuation_capped(accuracy);
    if (v < vb) {
      vb = v;
      pivot = i;
    }
  }
  if (vb >= accuracy) throw PrecisionExhausted("lattice bottom row vanishes at the working precision");
  const GaloisRingElement pivot_unit_inv = unit_part(cols[pivot][1], vb, accuracy).inverse();
  const int top_accuracy = accuracy - vb;
  int va = top_accuracy;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (i == pivot) continue;
    const GaloisRingElement t = unit_part(cols[i][1], vb, accuracy) * pivot_unit_inv;
    cols[i][0] = (cols[i][0] - t * cols[pivot][0]).truncated(top_accuracy);
    va = std::min(va, cols[i][0].valuation_capped(top_accuracy));
  }
  if (va >= top_accuracy) throw PrecisionExhausted("lattice is not of full rank at the working precision");

  int a = va;
  int b = vb;
  GaloisRingElement c = (cols[pivot][0] * pivot_unit_inv).truncated(a);
  while (a >= 1 && b >= 1 && c.valuation_capped(1) >= 1) {
    c = c.divided_by_p(1);
    --a;
    --b;
    c = c.truncated(a);
  }
  TreeVertex v{a, b, {}};
  v.c = c.coeffs();
  return v;
}

TreeVertex vertex_of(const LocalMatrix& g) {
  const auto& m = g.entries();
  return vertex_of_columns({Column{m[0], m[2]}, Column{m[1], m[3]}}, g.precision());
}

TreeVertex act(const LocalMatrix& g, const TreeVertex& v) { return vertex_of(g * hermite_basis(g.context(), v)); }

std::vector<TreeVertex> neighbors(const ContextPtr& ctx, const TreeVertex& v) {
  const LocalMatrix h = hermite_basis(ctx, v);
  std::vector<TreeVertex> out;
  const int p = ctx->p();
  const long long q = ctx->q();
  for (long long code = 0; code < q; ++code) {
    ExactElement x(ctx->r());
    long long t = code;
    for (auto& coef : x) {
      coef = integer_of(t % p);
      t /= p;
    }
    out.push_back(vertex_of(h * LocalMatrix::from_exact(ctx, {ExactElement{p}, x, ExactElement{0}, ExactElement{1}})));
  }
  out.push_back(vertex_of(h * LocalMatrix::from_ints(ctx, 1, 0, 0, p)));
  return out;
}

TreeVertex parent(const ContextPtr& ctx, const TreeVertex& v) {
  const int d = v.distance();
  if (d == 0) throw DomainError("the base vertex has no parent");
  const LocalMatrix h = hermite_basis(ctx, v);
  const auto& m = h.entries();
  const GaloisRingElement zero = GaloisRingElement::from_int(ctx, 0);
  const GaloisRingElement pd = GaloisRingElement::from_int(ctx, 1).times_p(d - 1);
  return vertex_of_columns({Column{m[0], m[2]}, Column{m[1], m[3]}, Column{pd, zero}, Column{zero, pd}},
                           ctx->precision());
}

std::vector<TreeVertex> enumerate_vertices(const ContextPtr& ctx, int depth) {
  if (depth < 0) throw DomainError("depth must be non-negative");
  const long long q = ctx->q();
  long long total = 1;
  long long shell = q + 1;
  for (int d = 1; d <= depth; ++d) {
    total += shell;
    check_resource(total, "tree vertices");
    shell *= q;
  }
  if (depth >= ctx->precision()) throw PrecisionExhausted("tree depth must stay below the working precision");
  const int p = ctx->p();
  const int r = ctx->r();
  std::vector<TreeVertex> out;
  out.reserve(total);
  for (int d = 0; d <= depth; ++d) {
    for (int a = 0; a <= d; ++a) {
      const int b = d - a;
      const long long pa = ipow_ll(p, a);
      long long count = 1;
      for (int i = 0; i < r; ++i) count *= pa;
      for (long long code = 0; code < count; ++code) {
        std::vector<std::int64_t> c(r);
        long long t = code;
        bool unit = false;
        for (auto& x : c) {
          x = t % pa;
          t /= pa;
          if (x % p != 0) unit = true;
        }
        if (a > 0 && b > 0 && !unit) continue;
        out.push_back(TreeVertex{a, b, std::move(c)});
      }
    }
  }
  return out;
}

bool stabilizes(const LocalMatrix& gamma, const TreeVertex& v) {
  const LocalMatrix h = hermite_basis(gamma.context(), v);
  return (h.inverse() * gamma * h).is_integral();
}

FixedSetReport fixed_set(const LocalMatrix& gamma, int depth) {
  FixedSetReport rep;
  rep.gamma = gamma.to_string();
  rep.depth = depth;
  const auto& ctx = gamma.context();
  for (const auto& v : enumerate_vertices(ctx, depth)) {
    if (stabilizes(gamma, v)) rep.stabilized.push_back(v);
  }
  if (rep.stabilized.empty()) {
    throw NotStabilizable("no vertex within distance " + std::to_string(depth) + " is stabilized by " + rep.gamma);
  }
  rep.k_tree = rep.stabilized.front().distance();
  rep.nearest = rep.stabilized.front();
  int at_min = 0;
  for (const auto& v : rep.stabilized) {
    if (v.distance() == rep.k_tree) ++at_min;
  }
  rep.nearest_unique = at_min == 1;
  const std::set<TreeVertex> members(rep.stabilized.begin(), rep.stabilized.end());
  std::size_t edges = 0;
  for (const auto& v : rep.stabilized) {
    if (v.distance() > 0 && members.count(parent(ctx, v))) ++edges;
  }
  rep.connected = edges + 1 == rep.stabilized.size();
  return rep;
}

int stabilized_line_count(const LocalMatrix& gamma) {
  if (!gamma.is_integral() || gamma.determinant().valuation_capped(2) != 1) {
    throw DomainError("stabilized_line_count needs an integral matrix with v_p(det) = 1");
  }
  const auto residue = gamma.context()->with_precision(1);
  std::array<GaloisRingElement, 4> m;
  for (int i = 0; i < 4; ++i) m[i] = gamma.entries()[i].in_context(residue);
  int count = m[2].is_zero() ? 1 : 0;  // the line through (1, 0)
  const long long q = residue->q();
  const int p = residue->p();
  for (long long code = 0; code < q; ++code) {
    std::vector<std::int64_t> c(residue->r());
    long long t = code;
    for (auto& x : c) {
      x = t % p;
      t /= p;
    }
    const GaloisRingElement x = GaloisRingElement::from_coeffs(residue, c);
    // gamma (x, 1) is proportional to (x, 1)
    const GaloisRingElement top = m[0] * x + m[1];
    const GaloisRingElement bottom = m[2] * x + m[3];
    if ((top - bottom * x).is_zero()) ++count;
  }
  return count;
}

OrbitalRatio orbital_ratio(const LocalMatrix& gamma, int n) {
  if (n < 1) throw DomainError("orbital ratio needs n >= 1");
  if (gamma.determinant().valuation_capped(2) != 1) throw DomainError("orbital ratio needs v_p(det gamma) = 1");
  OrbitalRatio out;
  const auto& ctx = gamma.context();
  const long long q = ctx->q();
  if (gamma.trace().valuation_capped(0) < 0) {
    out.ratio = 0;
    out.weighted_sum = 0;
    out.branch = "not-integral";
    out.flag = "trace is not integral, so gamma is not conjugate into GL2(Z_q) M2(Z_q); both integrals vanish";
    return out;
  }
  const GammaInvariants inv = GammaInvariants::of(gamma, n);
  const auto [tr, acc_tr] = integral_value(gamma.trace());
  const auto [det, acc_det] = integral_value(gamma.determinant());
  const GaloisRingElement zero = GaloisRingElement::from_int(ctx, 0);
  const GaloisRingElement one = GaloisRingElement::from_int(ctx, 1);
  const LocalMatrix companion = LocalMatrix::from_ring({zero, -det, one, tr}, 0, std::min(acc_tr, acc_det));

  const int fixed_lines = stabilized_line_count(companion);
  int fixed_neighbors = 0;
  for (const auto& v : neighbors(ctx, TreeVertex{})) {
    if (stabilizes(companion, v)) ++fixed_neighbors;
  }
  if (fixed_neighbors != fixed_lines) throw Error("neighbor count disagrees with the residue line count");
  const Rational weight = Rational(rational_of(q + 1 - fixed_lines)) / rational_of(q + 1);

  const bool trace_nonunit = inv.v_tr >= ExtendedInt(1);
  if (trace_nonunit) {
    out.branch = "trace-nonunit";
  } else {
    out.branch = *inv.ell >= ExtendedInt(n) ? "ell-at-least-n" : "ell-below-n";
  }
  Rational sum = 0;
  long long shell_size = 1;
  for (int d = 0; d < n; ++d) {
    PhiCase c;
    c.k = d;
    if (trace_nonunit) {
      c.branch = PhiBranch::TraceNonUnit;
    } else {
      const std::int64_t bound = n - d;
      const ExtendedInt ell = *inv.ell;
      c.ell_capped = ell.is_infinite() ? bound : std::min<std::int64_t>(ell.value(), bound);
      c.branch = c.ell_capped < bound ? PhiBranch::EllBelow : PhiBranch::EllAtLeast;
    }
    ShellTally s;
    s.distance = d;
    s.vertices = d == 0 ? 1 : shell_size;
    s.weight = d == 0 ? Rational(1) : weight;
    s.phi_value = phi_value(c, q, n);
    s.contribution = rational_of(s.vertices) * s.weight * s.phi_value;
    sum += s.contribution;
    out.shells.push_back(s);
    shell_size = d == 0 ? q + 1 : shell_size * q;
  }
  out.weighted_sum = sum;
  out.ratio = rational_of(q - 1) * sum;
  return out;
}

}  // namespace gl2lab
