#include "doctest.h"
#include "gl2lab/curve_count.hpp"
#include "gl2lab/errors.hpp"

using namespace gl2lab;

namespace {

int legendre(long long a, long long p) {
  a = ((a % p) + p) % p;
  if (a == 0) return 0;
  for (long long x = 1; x < p; ++x)
    if (x * x % p == a) return 1;
  return -1;
}

}  // namespace

TEST_CASE("census orbit bookkeeping") {
  for (long long q : {2, 3, 4, 5, 7}) {
    const Census c = enumerate_curves(q);
    CHECK(c.nonsingular == q * q * q * q * q - q * q * q * q);
    long long total = 0;
    Rational mass = 0;
    for (const auto& cls : c.classes) {
      total += cls.orbit_size;
      mass += Rational(1) / rational_of(cls.aut_order);
      CHECK(static_cast<long long>(cls.automorphisms.size()) == cls.aut_order);
      CHECK(cls.curve.trace * cls.curve.trace <= 4 * q);
    }
    CHECK(total == c.nonsingular);
    CHECK(mass == rational_of(q));
  }
}

TEST_CASE("number of isomorphism classes") {
  CHECK(enumerate_curves(2).classes.size() == 5);
  CHECK(enumerate_curves(3).classes.size() == 8);
  for (long long p : {5, 7, 11}) {
    // 2p + 3 + (-4/p) + 2 (-3/p) for p > 3
    const long long expected = 2 * p + 3 + legendre(-4, p) + 2 * legendre(-3, p);
    CHECK(static_cast<long long>(enumerate_curves(p).classes.size()) == expected);
  }
}

TEST_CASE("Weil bound and supersingular traces") {
  for (const auto& cls : enumerate_curves(5).classes) {
    CHECK(cls.curve.trace >= -4);
    CHECK(cls.curve.trace <= 4);
  }
  for (const auto& iso : isogeny_classes(enumerate_curves(7), 1)) {
    CHECK(iso.ordinary == (iso.trace != 0));
  }
}

TEST_CASE("group law") {
  const Census c = enumerate_curves(7);
  for (const auto& cls : c.classes) {
    const CurveGroup e(c.field, cls.curve.a);
    for (int P : e.points()) {
      CHECK(e.multiple(P, e.order()) == e.identity());
      CHECK(e.add(P, e.neg(P)) == e.identity());
      for (int Q : e.points()) CHECK(e.add(P, Q) == e.add(Q, P));
    }
  }
}

TEST_CASE("level-3 structures over F_7") {
  const Census c = enumerate_curves(7);
  bool saw_full = false;
  for (const auto& cls : c.classes) {
    const CurveGroup e(c.field, cls.curve.a);
    const long long bases = count_bases(e, 3);
    if (e.torsion(3).size() == 9) {
      saw_full = true;
      CHECK(bases == 48);
    } else {
      CHECK(bases == 0);
      CHECK(level_m_count(c, cls, 3) == 0);
    }
    CHECK(bases % cls.aut_order == 0);
    CHECK(automorphisms_act_freely(c, cls, 3));
  }
  CHECK(saw_full);
  CHECK_THROWS_AS(level_m_count(c, c.classes[0], 7), DomainError);
  CHECK_THROWS_AS(level_m_count(c, c.classes[0], 2), DomainError);
}

TEST_CASE("unit roots") {
  CHECK(unit_root_mod(1, 2, 2, 1) == 1);
  CHECK_THROWS_AS(unit_root_mod(0, 7, 7, 1), DomainError);
  // a = 2, q = 5: x^2 - 2x + 5 = 0 mod 25 has exactly one unit solution
  const long long x = unit_root_mod(2, 5, 5, 2);
  CHECK((x * x - 2 * x + 5) % 25 == 0);
  CHECK(x % 5 != 0);
}

TEST_CASE("semisimple Lefschetz sums") {
  SUBCASE("n = 0 counts moduli points") {
    for (auto [p, r] : {std::pair{2, 2}, std::pair{7, 1}}) {
      const auto rep = ss_lefschetz(p, r, 0, 3);
      CHECK(rep.total == rational_of(rep.moduli_points));
      CHECK(rep.moduli_points == rep.moduli_points_direct);
      CHECK(rep.moduli_points > 0);
      CHECK(rep.weil_bound);
      CHECK(rep.supersingular_criteria_agree);
    }
  }
  SUBCASE("per-point values") {
    const auto rep = ss_lefschetz(7, 1, 1, 3);
    CHECK(rep.dual_paths_agree);
    for (const auto& row : rep.rows) {
      if (!row.ordinary) {
        CHECK(row.per_point == 1 - 7 * (7 + 1 - 1));
      } else {
        CHECK(row.per_point == (row.unit_root == 1 ? Rational(49 - 1) : Rational(0)));
      }
    }
  }
  SUBCASE("supersingular point at p = 2 contributes -3") {
    const auto rep = ss_lefschetz(2, 1, 1, 3);
    for (const auto& row : rep.rows) {
      if (!row.ordinary) CHECK(row.per_point == -3);
    }
    CHECK(rep.dual_paths_agree);
  }
}

TEST_CASE("boundary term") {
  for (int n : {1, 2, 3}) CHECK(boundary_ss_trace(2, 1, n, 3) == 0);
  CHECK(gl2_order_mod(21) == 96768);
  CHECK(boundary_ss_trace(7, 1, 1, 3) == 384);
  const auto e = boundary_by_enumeration(7, 1, 1, 3);
  CHECK(e.group_order == 96768);
  CHECK(e.points == 96768 / 42);
  CHECK(e.uniform_packets);
  CHECK(e.fixed_packets == 384);
  const auto f = boundary_by_enumeration(5, 2, 1, 3);
  CHECK(rational_of(f.fixed_packets) == boundary_ss_trace(5, 2, 1, 3));
  CHECK(f.uniform_packets);
  const auto g = boundary_by_enumeration(2, 1, 1, 3);
  CHECK(g.fixed_packets == 0);
}
