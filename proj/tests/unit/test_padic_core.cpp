#include <random>

#include "doctest.h"
#include "gl2lab/errors.hpp"
#include "gl2lab/galois_ring.hpp"
#include "gl2lab/local_matrix.hpp"

using namespace gl2lab;

namespace {

GaloisRingElement random_element(const ContextPtr& ctx, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> dist(0, ctx->modulus() - 1);
  std::vector<std::int64_t> c(ctx->r());
  for (auto& x : c) x = dist(rng);
  return GaloisRingElement::from_coeffs(ctx, c);
}

LocalMatrix random_unit_matrix(const ContextPtr& ctx, std::mt19937_64& rng) {
  for (;;) {
    LocalMatrix::Entries e = {random_element(ctx, rng), random_element(ctx, rng), random_element(ctx, rng),
                              random_element(ctx, rng)};
    if ((e[0] * e[3] - e[1] * e[2]).is_unit()) return LocalMatrix::from_ring(e, 0, ctx->precision());
  }
}

}  // namespace

TEST_CASE("defining polynomial is the smallest irreducible") {
  CHECK(smallest_irreducible(2, 2) == std::vector<int>{1, 1});
  CHECK(smallest_irreducible(2, 3) == std::vector<int>{1, 1, 0});
  CHECK(smallest_irreducible(3, 2) == std::vector<int>{1, 0});
}

TEST_CASE("frobenius fixes the prime subring and has order r") {
  auto ctx = LocalContext::make(2, 2, 3);
  CHECK(GaloisRingElement::from_int(ctx, 3).frobenius() == GaloisRingElement::from_int(ctx, 3));

  auto field = LocalContext::make(2, 2, 1);
  auto g = GaloisRingElement::generator(field);
  CHECK(g.frobenius() == g.pow(2));
  auto field3 = LocalContext::make(3, 2, 1);
  auto g3 = GaloisRingElement::generator(field3);
  CHECK(g3.frobenius() == g3.pow(3));

  auto c23 = LocalContext::make(2, 3, 2);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    auto x = random_element(c23, rng);
    auto y = x;
    for (int k = 0; k < 3; ++k) y = y.frobenius();
    CHECK(y == x);
  }
}

TEST_CASE("frobenius is a ring automorphism of exact order r") {
  for (auto [p, r, n] : {std::tuple{2, 2, 2}, std::tuple{2, 3, 2}, std::tuple{3, 2, 2}, std::tuple{2, 4, 1}}) {
    auto ctx = LocalContext::make(p, r, n);
    const std::int64_t m = ctx->modulus();
    long long total = 1;
    for (int i = 0; i < r; ++i) total *= m;
    std::vector<GaloisRingElement> all;
    for (long long code = 0; code < total; ++code) {
      std::vector<std::int64_t> c(r);
      long long t = code;
      for (auto& x : c) {
        x = t % m;
        t /= m;
      }
      all.push_back(GaloisRingElement::from_coeffs(ctx, c));
    }
    bool order_smaller = true;
    for (std::size_t i = 0; i < all.size(); i += 3) {
      const auto& a = all[i];
      const auto& b = all[(i * 7 + 1) % all.size()];
      CHECK((a * b).frobenius() == a.frobenius() * b.frobenius());
      CHECK((a + b).frobenius() == a.frobenius() + b.frobenius());
    }
    for (int k = 1; k < r; ++k) {
      bool identity = true;
      for (const auto& a : all) identity = identity && a.frobenius(k) == a;
      CHECK_FALSE(identity);
    }
    for (const auto& a : all) order_smaller = order_smaller && a.frobenius(r) == a;
    CHECK(order_smaller);
  }
}

TEST_CASE("inverse and valuation") {
  auto ctx = LocalContext::make(3, 2, 4);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    auto x = random_element(ctx, rng);
    if (!x.is_unit()) continue;
    CHECK((x * x.inverse()).is_one());
  }
  CHECK(GaloisRingElement::from_int(ctx, 18).valuation() == ExtendedInt(2));
  CHECK(GaloisRingElement::from_int(ctx, 0).valuation().is_infinite());
  CHECK_THROWS_AS(GaloisRingElement::from_int(ctx, 3).inverse(), DomainError);
}

TEST_CASE("k_of examples") {
  auto ctx = LocalContext::make(2, 1, 8);
  CHECK(k_of(LocalMatrix::from_ints(ctx, 2, 0, 0, 1)) == 0);
  CHECK(k_of(LocalMatrix::from_ints(ctx, 1, 0, 0, 4, -1)) == 1);
  CHECK(k_of(LocalMatrix::from_ints(ctx, 1, 1, 0, 4, -1)) == 1);
  CHECK(k_of(parse_local_matrix(ctx, "p^-1 * [[1,1],[0,4]]")) == 1);
}

TEST_CASE("ell_of examples") {
  for (int p : {2, 3, 5}) {
    auto ctx = LocalContext::make(p, 1, 8);
    CHECK(ell_of(LocalMatrix::from_ints(ctx, p, 0, 0, 1 + p)) == ExtendedInt(1));
    CHECK(ell_of(LocalMatrix::from_ints(ctx, p, 0, 0, 1)).is_infinite());
  }
  auto c3 = LocalContext::make(3, 1, 6);
  CHECK(ell_of(LocalMatrix::from_ints(c3, 3, 0, 0, 2)) == ExtendedInt(0));
  CHECK_THROWS_AS(ell_of(LocalMatrix::from_ints(c3, 0, 1, -3, 0)), DomainError);
  CHECK_THROWS_AS(ell_of(LocalMatrix::from_ints(c3, 1, 0, 0, 1)), DomainError);
}

TEST_CASE("ell of a truncated matrix past its precision") {
  auto ctx = LocalContext::make(2, 1, 4);
  auto g = LocalMatrix::from_ring({GaloisRingElement::from_int(ctx, 2), GaloisRingElement::from_int(ctx, 0),
                                   GaloisRingElement::from_int(ctx, 0), GaloisRingElement::from_int(ctx, 1)},
                                  0, 4);
  CHECK_THROWS_AS(ell_of(g), PrecisionExhausted);
  CHECK(ell_capped(g, 3) == 3);
}

TEST_CASE("conjugation invariance of tr, det, ell and of k under integral conjugation") {
  auto ctx = LocalContext::make(2, 2, 10);
  std::mt19937_64 rng(5);
  auto g = LocalMatrix::from_exact(
      ctx, LocalMatrix::ExactEntries{ExactElement{2}, ExactElement{0}, ExactElement{0}, ExactElement{1, 4}}, 0);
  const auto ell = ell_of(g);
  for (int i = 0; i < 30; ++i) {
    auto h = random_unit_matrix(ctx, rng);
    auto c = h.inverse() * g * h;
    CHECK(k_of(c) == k_of(g));
    CHECK(ell_capped(c, 6) == std::min<std::int64_t>(ell.value(), 6));
    CHECK(c.determinant().valuation_capped(6) == g.determinant().valuation_capped(6));
  }
}

TEST_CASE("norm map") {
  auto ctx = LocalContext::make(2, 2, 1);
  CHECK(norm_map(LocalMatrix::identity(ctx)).same_as(LocalMatrix::identity(ctx)));
  auto x = GaloisRingElement::generator(ctx);
  auto zero = GaloisRingElement::from_int(ctx, 0);
  auto scalar = LocalMatrix::from_ring({x, zero, zero, x}, 0, 1);
  auto nx = ring_norm(x);
  CHECK(norm_map(scalar).same_as(LocalMatrix::from_ring({nx, zero, zero, nx}, 0, 1)));

  // every element of GL2(F_4): char poly of the norm has coefficients in F_2
  const std::int64_t m = ctx->modulus();
  std::vector<GaloisRingElement> elems;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) elems.push_back(GaloisRingElement::from_coeffs(ctx, {a, b}));
  int count = 0;
  for (const auto& a : elems)
    for (const auto& b : elems)
      for (const auto& c : elems)
        for (const auto& d : elems) {
          if (!(a * d - b * c).is_unit()) continue;
          ++count;
          auto n = norm_map(LocalMatrix::from_ring({a, b, c, d}, 0, 1));
          CHECK(n.trace().value.in_prime_subring());
          CHECK(n.determinant().value.in_prime_subring());
        }
  CHECK(count == 180);
}

TEST_CASE("sigma conjugation and the norm") {
  auto ctx = LocalContext::make(2, 2, 3);
  std::mt19937_64 rng(3);
  auto delta0 = random_unit_matrix(ctx, rng);
  CHECK(sigma_conjugate(LocalMatrix::identity(ctx), delta0).same_as(delta0));
  for (int i = 0; i < 100; ++i) {
    auto h = random_unit_matrix(ctx, rng);
    auto delta = random_unit_matrix(ctx, rng);
    CHECK(norm_map(sigma_conjugate(h, delta)).same_as(h.inverse() * norm_map(delta) * h));
  }
  auto c1 = LocalContext::make(3, 1, 3);
  auto h = LocalMatrix::from_ints(c1, 1, 1, 0, 1);
  auto d = LocalMatrix::from_ints(c1, 2, 5, 1, 7);
  CHECK(sigma_conjugate(h, d).same_as(h.inverse() * d * h));
}

TEST_CASE("unit eigenvalue") {
  auto ctx = LocalContext::make(2, 1, 8);
  auto g = LocalMatrix::from_ints(ctx, 0, -2, 1, 3);
  auto a = unit_eigenvalue(g, 3);
  CHECK(a.coeff(0) == 1);
  // brute-force oracle mod 8
  std::vector<int> roots;
  for (int x = 0; x < 8; ++x)
    if (x % 2 == 1 && (x * x - 3 * x + 2) % 8 == 0) roots.push_back(x);
  CHECK(roots == std::vector<int>{1});

  auto c5 = LocalContext::make(5, 1, 8);
  CHECK(unit_eigenvalue(LocalMatrix::from_ints(c5, 5, 0, 0, 7), 4).coeff(0) == 7);

  std::mt19937_64 rng(17);
  auto c3 = LocalContext::make(3, 2, 8);
  for (int i = 0; i < 100; ++i) {
    auto tr = random_element(c3, rng);
    if (!tr.is_unit()) continue;
    auto det = random_element(c3, rng).times_p(1 + static_cast<int>(rng() % 2));
    auto zero = GaloisRingElement::from_int(c3, 0);
    auto one = GaloisRingElement::from_int(c3, 1);
    auto gm = LocalMatrix::from_ring({zero, -det, one, tr}, 0, 8);
    if (gm.determinant().value.is_zero()) continue;
    const int n = 4;
    auto root = unit_eigenvalue(gm, n);
    auto n_ctx = root.context();
    CHECK((root * (tr.in_context(n_ctx) - root)) == det.in_context(n_ctx));
  }
  CHECK_THROWS_AS(unit_eigenvalue(LocalMatrix::from_ints(ctx, 0, 2, 1, 2), 2), DomainError);
}

TEST_CASE("matrix parsing round trip") {
  auto ctx = LocalContext::make(3, 2, 5);
  auto g = parse_local_matrix(ctx, "p^1 * [[(1,2),0],[3,(0,1)]]");
  CHECK(g.exponent() == 1);
  CHECK(parse_local_matrix(ctx, g.to_string()).same_as(g));
  CHECK_THROWS_AS(parse_local_matrix(ctx, "[[1,2],[3]]"), ParseError);
  CHECK_THROWS_AS(parse_local_matrix(ctx, "[[0,0],[0,0]]"), DomainError);
}
