#include "doctest.h"
#include "gl2lab/cyclotomic.hpp"
#include "gl2lab/errors.hpp"
#include "gl2lab/finite_rep.hpp"

using namespace gl2lab;

namespace {

Rational rational(const CyclotomicValue& v) { return v.to_rational(); }

ClassFunction class_indicator(const PrincipalSeries& ps, int c) {
  ClassFunction f(ps.group(), ps.field());
  f.set(c, CyclotomicValue(ps.field(), Rational(1)));
  return f;
}

}  // namespace

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_polynomial(1) == std::vector<long long>{-1, 1});
  CHECK(cyclotomic_polynomial(2) == std::vector<long long>{1, 1});
  CHECK(cyclotomic_polynomial(6) == std::vector<long long>{1, -1, 1});
  CHECK(cyclotomic_polynomial(12) == std::vector<long long>{1, 0, -1, 0, 1});
  auto f = CyclotomicField::make(6);
  auto z = CyclotomicValue::zeta_power(f, 1);
  auto acc = CyclotomicValue(f, Rational(1));
  for (int i = 0; i < 6; ++i) acc *= z;
  CHECK(acc == CyclotomicValue(f, Rational(1)));
  CHECK(z * z.conj() == CyclotomicValue(f, Rational(1)));
  // sum of all 6th roots of unity vanishes
  CyclotomicValue sum(f);
  for (int i = 0; i < 6; ++i) sum += CyclotomicValue::zeta_power(f, i);
  CHECK(sum == CyclotomicValue(f));
}

TEST_CASE("unit characters of (Z/2^n)^x use two generators") {
  UnitCharacters c(2, 4);
  CHECK(c.generators() == std::vector<int>{15, 5});
  CHECK(c.order() == 8);
  // orthogonality: sum_u chi_k(u) = 0 for k != 0
  auto f = CyclotomicField::make(c.order());
  for (int k = 0; k < c.count(); ++k) {
    CyclotomicValue s(f);
    for (int u : c.units()) s += CyclotomicValue::zeta_power(f, c.exponent(k, u));
    CHECK(s == CyclotomicValue(f, Rational(k == 0 ? c.order() : 0)));
  }
}

TEST_CASE("group orders and class counts") {
  for (auto [p, r, n] : {std::tuple{2, 1, 1}, std::tuple{3, 1, 1}, std::tuple{2, 2, 1}, std::tuple{2, 1, 2},
                         std::tuple{3, 1, 2}, std::tuple{5, 1, 1}}) {
    auto g = FiniteGL2::make(p, r, n);
    CHECK(g->order() == gl2_order(p, r, n));
    long long total = 0;
    for (auto s : g->class_sizes()) total += s;
    CHECK(total == g->order());
    if (n == 1) {
      long long q = 1;
      for (int i = 0; i < r; ++i) q *= p;
      CHECK(g->num_classes() == q * q - 1);
    }
  }
  CHECK(FiniteGL2::make(2, 1, 1)->order() == 6);
  CHECK(FiniteGL2::make(2, 2, 1)->order() == 180);
}

TEST_CASE("class partition agrees with brute-force conjugation") {
  auto g = FiniteGL2::make(2, 1, 2);
  for (MatCode x : g->elements()) {
    for (MatCode y : g->elements()) {
      CHECK(g->class_of(g->mul(g->inv(y), g->mul(x, y))) == g->class_of(x));
    }
  }
}

TEST_CASE("induced character degrees and Steinberg") {
  for (auto [p, n] : {std::pair{2, 1}, std::pair{3, 1}, std::pair{2, 2}, std::pair{3, 2}}) {
    PrincipalSeries ps(p, n);
    const long long pn = ps.unit_characters().modulus();
    for (int k = 0; k < ps.unit_characters().count(); ++k) {
      CHECK(rational(ps.induced(k).degree()) == Rational(static_cast<long>(pn + pn / p)));
    }
    CHECK(rational(ps.steinberg().degree()) == Rational(static_cast<long>(pn + pn / p - 1)));
  }
  PrincipalSeries ps22(2, 2);
  CHECK(rational(ps22.induced(0).degree()) == 6);
  CHECK(rational(ps22.steinberg().degree()) == 5);
}

TEST_CASE("trivial induction counts fixed points on the projective line") {
  for (auto [p, n] : {std::pair{3, 1}, std::pair{2, 2}, std::pair{3, 2}}) {
    PrincipalSeries ps(p, n);
    const auto& g = *ps.group();
    for (int c = 0; c < g.num_classes(); ++c) {
      CHECK(rational(ps.induced(0).at_class(c)) == Rational(static_cast<long>(ps.fixed_lines(g.class_reps()[c]))));
    }
  }
  PrincipalSeries ps(3, 1);
  const auto& g = *ps.group();
  CHECK(rational(ps.induced(0)(g.make(1, 0, 0, 2))) == 2);
}

TEST_CASE("inner products at level p") {
  for (int p : {2, 3, 5}) {
    PrincipalSeries ps(p, 1);
    CHECK(rational(inner_product(ps.steinberg(), ps.steinberg())) == 1);
    const int count = ps.unit_characters().count();
    for (int a = 0; a < count; ++a) {
      for (int b = 0; b < count; ++b) {
        // Mackey: Ind(1 x chi) is irreducible for chi != 1, Ind(1 x 1) = 1 + St
        const int expected = a == b ? (a == 0 ? 2 : 1) : 0;
        CHECK(rational(inner_product(ps.induced(a), ps.induced(b))) == expected);
      }
    }
  }
}

TEST_CASE("Drinfeld permutation character decomposes into principal series") {
  for (auto [p, n] : {std::pair{2, 1}, std::pair{3, 1}, std::pair{2, 2}, std::pair{3, 2}}) {
    PrincipalSeries ps(p, n);
    ClassFunction sum(ps.group(), ps.field());
    for (int k = 0; k < ps.unit_characters().count(); ++k) sum += ps.induced(k);
    CHECK(sum == ps.drinfeld());
  }
  PrincipalSeries ps(2, 2);
  CHECK(rational(ps.drinfeld().degree()) == 12);
}

TEST_CASE("twisted fixed surjections at the identity") {
  for (auto [p, n] : {std::pair{2, 2}, std::pair{3, 1}, std::pair{3, 2}}) {
    PrincipalSeries ps(p, n);
    const long long pn = ps.unit_characters().modulus();
    for (int a : ps.unit_characters().units()) {
      CHECK(ps.twisted_fixed_surjections(ps.group()->identity(), a) == (a == 1 ? pn * pn - (pn / p) * (pn / p) : 0));
    }
  }
}

TEST_CASE("semisimple trace values") {
  PrincipalSeries ps(2, 1);
  auto e = identity_idempotent(ps.group(), ps.field());
  CHECK(rational(ss_trace_point({true, 0}, e, ps, 1)) == -3);
  CHECK(rational(ss_trace_point({false, 1}, e, ps, 1)) == 3);
  PrincipalSeries ps3(3, 1);
  auto e3 = identity_idempotent(ps3.group(), ps3.field());
  CHECK(rational(ss_trace_point({false, 2}, e3, ps3, 1)) == 0);
  CHECK_THROWS_AS(ss_trace_point({false, 3}, e3, ps3, 1), DomainError);
}

TEST_CASE("character path and counting path agree") {
  for (auto [p, n] : {std::pair{2, 1}, std::pair{3, 1}, std::pair{2, 2}, std::pair{3, 2}, std::pair{2, 3}}) {
    PrincipalSeries ps(p, n);
    std::vector<ClassFunction> hs = {identity_idempotent(ps.group(), ps.field())};
    for (int c = 0; c < ps.group()->num_classes(); c += 3) hs.push_back(class_indicator(ps, c));
    for (const auto& h : hs) {
      for (int r : {1, 2}) {
        CHECK(ss_trace_point({true, 0}, h, ps, r) == ss_trace_point_by_counting({true, 0}, h, ps, r));
        for (int a : ps.unit_characters().units()) {
          CHECK(ss_trace_point({false, a}, h, ps, r) == ss_trace_point_by_counting({false, a}, h, ps, r));
        }
      }
    }
  }
}
