#include "gl2lab/curve_count.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>

#include "gl2lab/errors.hpp"
#include "gl2lab/finite_rep.hpp"

namespace gl2lab {

namespace {

struct FieldOps {
  const FiniteRing& k;
  int c(long long v) const { return k.from_int(v); }
  int add(int a, int b) const { return k.add(a, b); }
  int sub(int a, int b) const { return k.sub(a, b); }
  int mul(int a, int b) const { return k.mul(a, b); }
  int mul(int a, int b, int c) const { return k.mul(k.mul(a, b), c); }
  int sq(int a) const { return k.mul(a, a); }
  int inv(int a) const { return k.inv(a); }
};

std::pair<int, int> prime_power(long long q) {
  for (int p = 2; p <= q; ++p) {
    if (q % p != 0) continue;
    int r = 0;
    long long t = q;
    while (t % p == 0) {
      t /= p;
      ++r;
    }
    if (t != 1) break;
    return {p, r};
  }
  throw DomainError("q = " + std::to_string(q) + " is not a prime power");
}

long long tuple_code(const std::array<int, 5>& a, long long q) {
  long long code = 0;
  for (int i = 4; i >= 0; --i) code = code * q + a[i];
  return code;
}

std::array<int, 5> tuple_of(long long code, long long q) {
  std::array<int, 5> a{};
  for (auto& x : a) {
    x = static_cast<int>(code % q);
    code /= q;
  }
  return a;
}

int j_invariant(const FiniteRing& k, const std::array<int, 5>& a, int disc) {
  const FieldOps f{k};
  const int b2 = f.add(f.sq(a[0]), f.mul(f.c(4), a[1]));
  const int b4 = f.add(f.mul(f.c(2), a[3]), f.mul(a[0], a[2]));
  const int c4 = f.sub(f.sq(b2), f.mul(f.c(24), b4));
  return f.mul(f.mul(c4, f.sq(c4)), f.inv(disc));
}

long long trace_of_points(long long q, long long points) { return q + 1 - points; }

long long mod(long long a, long long m) { return ((a % m) + m) % m; }

}  // namespace

int weierstrass_discriminant(const FiniteRing& k, const std::array<int, 5>& a) {
  const FieldOps f{k};
  const auto [a1, a2, a3, a4, a6] = a;
  const int b2 = f.add(f.sq(a1), f.mul(f.c(4), a2));
  const int b4 = f.add(f.mul(f.c(2), a4), f.mul(a1, a3));
  const int b6 = f.add(f.sq(a3), f.mul(f.c(4), a6));
  int b8 = f.add(f.mul(f.sq(a1), a6), f.mul(f.c(4), a2, a6));
  b8 = f.sub(b8, f.mul(a1, a3, a4));
  b8 = f.add(b8, f.mul(a2, f.sq(a3)));
  b8 = f.sub(b8, f.sq(a4));
  int d = f.k.neg(f.mul(f.sq(b2), b8));
  d = f.sub(d, f.mul(f.c(8), f.mul(b4, f.sq(b4))));
  d = f.sub(d, f.mul(f.c(27), f.sq(b6)));
  d = f.add(d, f.mul(f.mul(f.c(9), b2), f.mul(b4, b6)));
  return d;
}

std::array<int, 5> transform_coefficients(const FiniteRing& k, const std::array<int, 5>& a, const CurveIsomorphism& g) {
  const FieldOps f{k};
  const auto [a1, a2, a3, a4, a6] = a;
  const auto [u, r, s, t] = g;
  const int ui = f.inv(u);
  const int ui2 = f.sq(ui);
  const int ui3 = f.mul(ui2, ui);
  const int ui4 = f.sq(ui2);
  const int ui6 = f.sq(ui3);
  std::array<int, 5> out{};
  out[0] = f.mul(ui, f.add(a1, f.mul(f.c(2), s)));
  out[1] = f.mul(ui2, f.sub(f.add(f.sub(a2, f.mul(s, a1)), f.mul(f.c(3), r)), f.sq(s)));
  out[2] = f.mul(ui3, f.add(f.add(a3, f.mul(r, a1)), f.mul(f.c(2), t)));
  int v4 = f.sub(a4, f.mul(s, a3));
  v4 = f.add(v4, f.mul(f.c(2), r, a2));
  v4 = f.sub(v4, f.mul(f.add(t, f.mul(r, s)), a1));
  v4 = f.add(v4, f.mul(f.c(3), f.sq(r)));
  v4 = f.sub(v4, f.mul(f.c(2), s, t));
  out[3] = f.mul(ui4, v4);
  int v6 = f.add(a6, f.mul(r, a4));
  v6 = f.add(v6, f.mul(f.sq(r), a2));
  v6 = f.add(v6, f.mul(f.sq(r), r));
  v6 = f.sub(v6, f.mul(t, a3));
  v6 = f.sub(v6, f.sq(t));
  v6 = f.sub(v6, f.mul(r, t, a1));
  out[4] = f.mul(ui6, v6);
  return out;
}

CurveGroup::CurveGroup(FiniteRingPtr field, const std::array<int, 5>& a) : k_(std::move(field)), a_(a) {
  q_ = k_->size();
  identity_ = q_ * q_;
  const FieldOps f{*k_};
  const auto [a1, a2, a3, a4, a6] = a_;
  for (int x = 0; x < q_; ++x) {
    const int rhs = f.add(f.add(f.mul(f.sq(x), x), f.mul(a2, f.sq(x))), f.add(f.mul(a4, x), a6));
    for (int y = 0; y < q_; ++y) {
      const int lhs = f.add(f.sq(y), f.add(f.mul(a1, x, y), f.mul(a3, y)));
      if (lhs == rhs) points_.push_back(x * q_ + y);
    }
  }
  points_.push_back(identity_);
}

int CurveGroup::neg(int P) const {
  if (P == identity_) return P;
  const FieldOps f{*k_};
  const int x = P / q_;
  const int y = P % q_;
  const int ny = f.k.neg(f.add(y, f.add(f.mul(a_[0], x), a_[2])));
  return x * q_ + ny;
}

int CurveGroup::add(int P, int Q) const {
  if (P == identity_) return Q;
  if (Q == identity_) return P;
  const FieldOps f{*k_};
  const auto [a1, a2, a3, a4, a6] = a_;
  const int x1 = P / q_, y1 = P % q_;
  const int x2 = Q / q_, y2 = Q % q_;
  if (x1 == x2 && f.add(f.add(y1, y2), f.add(f.mul(a1, x2), a3)) == 0) return identity_;
  int lambda, nu;
  if (x1 != x2) {
    const int dx = f.inv(f.sub(x2, x1));
    lambda = f.mul(f.sub(y2, y1), dx);
    nu = f.mul(f.sub(f.mul(y1, x2), f.mul(y2, x1)), dx);
  } else {
    const int den = f.inv(f.add(f.add(f.mul(f.c(2), y1), f.mul(a1, x1)), a3));
    const int x1sq = f.sq(x1);
    lambda = f.mul(f.sub(f.add(f.add(f.mul(f.c(3), x1sq), f.mul(f.c(2), a2, x1)), a4), f.mul(a1, y1)), den);
    int num = f.k.neg(f.mul(x1sq, x1));
    num = f.add(num, f.mul(a4, x1));
    num = f.add(num, f.mul(f.c(2), a6));
    num = f.sub(num, f.mul(a3, y1));
    nu = f.mul(num, den);
  }
  const int x3 = f.sub(f.sub(f.sub(f.add(f.sq(lambda), f.mul(a1, lambda)), a2), x1), x2);
  const int y3 = f.sub(f.k.neg(f.add(f.mul(f.add(lambda, a1), x3), nu)), a3);
  return x3 * q_ + y3;
}

int CurveGroup::multiple(int P, long long k) const {
  if (k < 0) return multiple(neg(P), -k);
  int acc = identity_;
  int base = P;
  while (k > 0) {
    if (k & 1) acc = add(acc, base);
    base = add(base, base);
    k >>= 1;
  }
  return acc;
}

int CurveGroup::transport(int P, const CurveIsomorphism& g) const {
  if (P == identity_) return P;
  const FieldOps f{*k_};
  const auto [u, r, s, t] = g;
  const int ui2 = f.sq(f.inv(u));
  const int ui3 = f.mul(ui2, f.inv(u));
  const int x = P / q_, y = P % q_;
  const int xp = f.mul(f.sub(x, r), ui2);
  const int yp = f.mul(f.sub(f.sub(y, f.mul(s, f.mul(f.sq(u), xp))), t), ui3);
  return xp * q_ + yp;
}

std::vector<int> CurveGroup::torsion(int m) const {
  std::vector<int> out;
  for (int P : points_) {
    if (multiple(P, m) == identity_) out.push_back(P);
  }
  return out;
}

long long count_bases(const CurveGroup& e, int m) {
  const auto t = e.torsion(m);
  if (static_cast<long long>(t.size()) != static_cast<long long>(m) * m) return 0;
  long long count = 0;
  for (int P : t) {
    for (int Q : t) {
      // P, Q span E[m] iff the m^2 combinations iP + jQ are distinct
      std::vector<int> seen;
      seen.reserve(static_cast<std::size_t>(m) * m);
      int row = e.identity();
      for (int i = 0; i < m; ++i) {
        int x = row;
        for (int j = 0; j < m; ++j) {
          seen.push_back(x);
          x = e.add(x, Q);
        }
        row = e.add(row, P);
      }
      std::sort(seen.begin(), seen.end());
      if (std::adjacent_find(seen.begin(), seen.end()) == seen.end()) ++count;
    }
  }
  return count;
}

Census enumerate_curves(long long q) {
  const auto [p, r] = prime_power(q);
  Census c;
  c.field = FiniteRing::make(p, r, 1);
  c.q = q;
  c.group_order = (q - 1) * q * q * q;
  const long long total = q * q * q * q * q;
  check_resource(total, "Weierstrass tuples over F_" + std::to_string(q));
  const FiniteRing& k = *c.field;

  std::vector<CurveIsomorphism> group;
  group.reserve(c.group_order);
  for (int u = 1; u < q; ++u)
    for (int rr = 0; rr < q; ++rr)
      for (int s = 0; s < q; ++s)
        for (int t = 0; t < q; ++t) group.push_back({u, rr, s, t});
  // units of F_q are the nonzero codes
  std::vector<char> seen(total, 0);
  for (long long code = 0; code < total; ++code) {
    const auto a = tuple_of(code, q);
    const int disc = weierstrass_discriminant(k, a);
    if (disc == 0) continue;
    ++c.nonsingular;
    if (seen[code]) continue;
    CurveClass cls;
    cls.curve.a = a;
    cls.curve.discriminant = disc;
    cls.curve.j_invariant = j_invariant(k, a, disc);
    CurveGroup e(c.field, a);
    cls.curve.points = e.order();
    cls.curve.trace = trace_of_points(q, cls.curve.points);
    for (const auto& g : group) {
      const auto b = transform_coefficients(k, a, g);
      const long long bc = tuple_code(b, q);
      if (!seen[bc]) {
        seen[bc] = 1;
        ++cls.orbit_size;
      }
      if (bc == code) cls.automorphisms.push_back(g);
    }
    cls.aut_order = c.group_order / cls.orbit_size;
    c.classes.push_back(std::move(cls));
  }
  return c;
}

namespace {

void check_level(const Census& census, int m) {
  if (m < 3) throw DomainError("level m must be at least 3");
  if (std::gcd(static_cast<long long>(m), census.q) != 1) throw DomainError("level m must be prime to q");
}

}  // namespace

long long level_m_count(const Census& census, const CurveClass& c, int m) {
  check_level(census, m);
  const long long bases = count_bases(CurveGroup(census.field, c.curve.a), m);
  if (bases % c.aut_order != 0) throw DomainError("automorphisms do not act freely on level structures");
  return bases / c.aut_order;
}

bool automorphisms_act_freely(const Census& census, const CurveClass& c, int m) {
  check_level(census, m);
  const CurveGroup e(census.field, c.curve.a);
  const auto t = e.torsion(m);
  if (static_cast<long long>(t.size()) != static_cast<long long>(m) * m) return true;
  const CurveIsomorphism id{1, 0, 0, 0};
  for (const auto& g : c.automorphisms) {
    if (g == id) continue;
    if (std::all_of(t.begin(), t.end(), [&](int P) { return e.transport(P, g) == P; })) return false;
  }
  return true;
}

long long direct_moduli_count(const Census& census, int m) {
  check_level(census, m);
  const long long q = census.q;
  const long long total = q * q * q * q * q;
  long long pairs = 0;
  for (long long code = 0; code < total; ++code) {
    const auto a = tuple_of(code, q);
    if (weierstrass_discriminant(*census.field, a) == 0) continue;
    pairs += count_bases(CurveGroup(census.field, a), m);
  }
  if (pairs % census.group_order != 0) throw DomainError("level structures are not a free G-set");
  return pairs / census.group_order;
}

long long unit_root_mod(long long a, long long q, int p, int n) {
  if (mod(a, p) == 0) throw DomainError("no unit root: p divides the trace");
  const long long pn = ipow_ll(p, n);
  long long found = -1;
  for (long long x = 0; x < pn; ++x) {
    if (x % p == 0) continue;
    if (mod((x * x) % pn - mod(a, pn) * x % pn + q, pn) == 0) {
      if (found >= 0) throw DomainError("unit root is not unique");
      found = x;
    }
  }
  if (found < 0) throw DomainError("no unit root found");
  return found;
}

std::vector<IsogenyClassRecord> isogeny_classes(const Census& census, int n) {
  const int p = census.field->p();
  std::map<long long, IsogenyClassRecord> by_trace;
  for (std::size_t i = 0; i < census.classes.size(); ++i) {
    const long long a = census.classes[i].curve.trace;
    auto& rec = by_trace[a];
    rec.trace = a;
    rec.members.push_back(static_cast<int>(i));
    rec.ordinary = mod(a, p) != 0;
    if (rec.ordinary && n >= 1) rec.unit_root = unit_root_mod(a, census.q, p, n);
  }
  std::vector<IsogenyClassRecord> out;
  for (auto& [a, rec] : by_trace) out.push_back(std::move(rec));
  return out;
}

std::vector<long long> unrealized_traces(const Census& census) {
  std::vector<long long> out;
  for (long long a = -2 * census.q; a <= 2 * census.q; ++a) {
    if (a * a > 4 * census.q) continue;
    const bool hit = std::any_of(census.classes.begin(), census.classes.end(),
                                 [&](const CurveClass& c) { return c.curve.trace == a; });
    if (!hit) out.push_back(a);
  }
  return out;
}

LefschetzReport ss_lefschetz(int p, int r, int n, int m) {
  if (n < 0) throw DomainError("n must be non-negative");
  LefschetzReport rep;
  rep.p = p;
  rep.r = r;
  rep.n = n;
  rep.m = m;
  rep.q = ipow_ll(p, r);
  const Census census = enumerate_curves(rep.q);
  const auto classes = isogeny_classes(census, n);

  std::optional<PrincipalSeries> ps;
  std::optional<ClassFunction> e_gamma;
  if (n >= 1) {
    ps.emplace(p, n);
    e_gamma.emplace(identity_idempotent(ps->group(), ps->field()));
  }
  rep.dual_paths_agree = true;
  rep.weil_bound = true;
  rep.supersingular_criteria_agree = true;
  for (const auto& iso : classes) {
    LefschetzRow row;
    row.trace = iso.trace;
    row.ordinary = iso.ordinary;
    row.unit_root = iso.unit_root;
    for (int i : iso.members) {
      const auto& c = census.classes[i];
      row.points += level_m_count(census, c, m);
      rep.weil_bound = rep.weil_bound && c.curve.trace * c.curve.trace <= 4 * rep.q;
      const bool by_trace = mod(c.curve.trace, p) == 0;
      const bool by_count = mod(c.curve.points, p) == 1;
      rep.supersingular_criteria_agree = rep.supersingular_criteria_agree && by_trace == by_count;
    }
    if (n == 0) {
      row.per_point = 1;
      row.per_point_counting = 1;
    } else {
      PointKind kind;
      kind.supersingular = !iso.ordinary;
      kind.unit_root = iso.unit_root;
      row.per_point = ss_trace_point(kind, *e_gamma, *ps, r).to_rational();
      row.per_point_counting = ss_trace_point_by_counting(kind, *e_gamma, *ps, r).to_rational();
    }
    rep.dual_paths_agree = rep.dual_paths_agree && row.per_point == row.per_point_counting;
    row.contribution = row.per_point * rational_of(row.points);
    rep.total += row.contribution;
    rep.moduli_points += row.points;
    rep.rows.push_back(std::move(row));
  }
  rep.moduli_points_direct = direct_moduli_count(census, m);
  rep.boundary = n >= 1 ? boundary_ss_trace(p, r, n, m) : Rational(0);
  return rep;
}

long long gl2_order_mod(long long N) {
  if (N < 1) throw DomainError("modulus must be positive");
  long long order = 1;
  long long t = N;
  for (long long l = 2; l <= t; ++l) {
    if (t % l != 0) continue;
    int e = 0;
    while (t % l == 0) {
      t /= l;
      ++e;
    }
    order *= gl2_order(static_cast<int>(l), 1, e);
  }
  return order;
}

Rational boundary_ss_trace(int p, int r, int n, int m) {
  if (n < 1) throw DomainError("boundary trace needs n >= 1");
  if (m < 3 || m % p == 0) throw DomainError("need m >= 3 prime to p");
  if (!is_prime(p)) throw DomainError("p must be prime");
  if (mod(ipow_ll(p, r) % m, m) != 1 % m) return Rational(0);
  const long long N = ipow_ll(p, n) * m;
  const Rational cusps = Rational(rational_of(gl2_order_mod(N)) / rational_of(2 * N));
  return Rational(cusps / rational_of(ipow_ll(p, n - 1) * (p - 1)));
}

BoundaryEnumeration boundary_by_enumeration(int p, int r, int n, int m) {
  if (n < 1) throw DomainError("boundary trace needs n >= 1");
  if (m < 3 || m % p == 0) throw DomainError("need m >= 3 prime to p");
  const long long pn = ipow_ll(p, n);
  const long long N = pn * m;
  const long long space = N * N * N * N;
  check_resource(space, "GL2(Z/" + std::to_string(N) + ")");
  auto code = [N](long long a, long long b, long long c, long long d) {
    return ((mod(a, N) * N + mod(b, N)) * N + mod(c, N)) * N + mod(d, N);
  };

  BoundaryEnumeration out;
  std::vector<int> point_of(space, -1);
  std::vector<std::array<long long, 4>> reps;
  for (long long a = 0; a < N; ++a)
    for (long long b = 0; b < N; ++b)
      for (long long c = 0; c < N; ++c)
        for (long long d = 0; d < N; ++d) {
          if (std::gcd(mod(a * d - b * c, N), N) != 1) continue;
          ++out.group_order;
          const long long x = code(a, b, c, d);
          if (point_of[x] >= 0) continue;
          const int id = static_cast<int>(reps.size());
          reps.push_back({a, b, c, d});
          for (long long t = 0; t < N; ++t) {
            for (int sign : {1, -1}) {
              point_of[code(sign * (a + t * c), sign * (b + t * d), sign * c, sign * d)] = id;
            }
          }
        }
  out.points = static_cast<long long>(reps.size());

  auto inverse_mod = [N](long long x) {
    for (long long y = 1; y < N; ++y)
      if (mod(x * y, N) == 1) return y;
    throw DomainError("not a unit");
  };
  auto act = [&](long long x, int pt) {
    const long long xi = inverse_mod(x);
    const auto& g = reps[pt];
    return point_of[code(xi * g[0], xi * g[1], g[2], g[3])];
  };

  // inertia: units congruent to 1 mod m
  std::vector<long long> inertia;
  for (long long x = 1; x < N; ++x) {
    if (std::gcd(x, N) == 1 && x % m == 1 % m) inertia.push_back(x);
  }
  std::vector<int> packet_of(out.points, -1);
  std::vector<long long> packet_sizes;
  for (int pt = 0; pt < out.points; ++pt) {
    if (packet_of[pt] >= 0) continue;
    const int id = static_cast<int>(packet_sizes.size());
    packet_sizes.push_back(0);
    for (long long x : inertia) {
      const int y = act(x, pt);
      if (packet_of[y] < 0) {
        packet_of[y] = id;
        ++packet_sizes[id];
      }
    }
  }
  out.packets = static_cast<long long>(packet_sizes.size());
  out.uniform_packets = std::all_of(packet_sizes.begin(), packet_sizes.end(),
                                    [&](long long s) { return s == ipow_ll(p, n - 1) * (p - 1); });

  // Frobenius lift: x = p^r mod m, x = 1 mod p^n
  long long frob = -1;
  const long long qm = mod(ipow_ll(p, r), m);
  for (long long x = 1; x < N; ++x) {
    if (x % m == qm && x % pn == 1 % pn) {
      frob = x;
      break;
    }
  }
  std::vector<int> packet_rep(out.packets, -1);
  for (int pt = 0; pt < out.points; ++pt) {
    if (packet_rep[packet_of[pt]] < 0) packet_rep[packet_of[pt]] = pt;
  }
  for (int pk = 0; pk < out.packets; ++pk) {
    if (packet_of[act(frob, packet_rep[pk])] == pk) ++out.fixed_packets;
  }
  return out;
}

}  // namespace gl2lab
