#include <map>
#include <set>

#include "doctest.h"
#include "gl2lab/bt_tree.hpp"
#include "gl2lab/errors.hpp"
#include "gl2lab/sampling.hpp"
#include "gl2lab/test_functions.hpp"

using namespace gl2lab;

TEST_CASE("shell counts") {
  CHECK(enumerate_vertices(LocalContext::make(2, 1, 8), 0).size() == 1);
  CHECK(enumerate_vertices(LocalContext::make(2, 1, 8), 2).size() == 10);
  CHECK(enumerate_vertices(LocalContext::make(3, 1, 8), 3).size() == 53);
  for (auto [p, r] : {std::pair{2, 1}, std::pair{3, 1}, std::pair{2, 2}}) {
    auto ctx = LocalContext::make(p, r, 8);
    const long long q = ctx->q();
    const int depth = q == 4 ? 4 : 5;
    auto all = enumerate_vertices(ctx, depth);
    std::map<int, long long> shells;
    for (const auto& v : all) ++shells[v.distance()];
    long long expected = q + 1;
    for (int d = 1; d <= depth; ++d) {
      CHECK(shells[d] == expected);
      expected *= q;
    }
    CHECK(std::set<TreeVertex>(all.begin(), all.end()).size() == all.size());
  }
}

TEST_CASE("enumeration matches breadth-first search over neighbors") {
  for (auto [p, r, depth] : {std::tuple{2, 1, 4}, std::tuple{3, 1, 3}, std::tuple{2, 2, 2}}) {
    auto ctx = LocalContext::make(p, r, 8);
    std::set<TreeVertex> seen{TreeVertex{0, 0, std::vector<std::int64_t>(r, 0)}};
    std::vector<TreeVertex> frontier(seen.begin(), seen.end());
    for (int d = 0; d < depth; ++d) {
      std::vector<TreeVertex> next;
      for (const auto& v : frontier) {
        auto nb = neighbors(ctx, v);
        CHECK(std::set<TreeVertex>(nb.begin(), nb.end()).size() == nb.size());
        for (const auto& w : nb) {
          if (seen.insert(w).second) next.push_back(w);
        }
      }
      frontier = next;
    }
    auto all = enumerate_vertices(ctx, depth);
    CHECK(seen == std::set<TreeVertex>(all.begin(), all.end()));
    for (const auto& v : all) {
      if (v.distance() == 0) continue;
      auto up = parent(ctx, v);
      CHECK(up.distance() == v.distance() - 1);
      auto nb = neighbors(ctx, up);
      CHECK(std::find(nb.begin(), nb.end(), v) != nb.end());
    }
  }
}

TEST_CASE("stabilization examples") {
  auto ctx = LocalContext::make(2, 1, 8);
  TreeVertex v0{0, 0, {0}};
  CHECK(stabilizes(LocalMatrix::from_ints(ctx, 3, 1, 5, 2), v0));
  auto h = vertex_of(LocalMatrix::from_ints(ctx, 2, 0, 0, 1));
  CHECK(stabilizes(LocalMatrix::from_ints(ctx, 2, 0, 0, 1), h));
  auto g = LocalMatrix::from_ints(ctx, 0, 1, -2, 0);
  // g mod 2 is nilpotent: exactly one of the three neighbors (its kernel line) is stabilized
  int stabilized = 0;
  for (const auto& v : neighbors(ctx, v0)) stabilized += stabilizes(g, v) ? 1 : 0;
  CHECK(stabilized == 1);
}

TEST_CASE("fixed set examples") {
  auto ctx = LocalContext::make(2, 1, 10);
  auto rep = fixed_set(LocalMatrix::from_ints(ctx, 3, 1, 1, 2), 3);
  CHECK(rep.k_tree == 0);
  CHECK(rep.nearest == TreeVertex{0, 0, {0}});
  // a diagonal conjugator would commute with diag(p, 1)
  auto h = LocalMatrix::from_ints(ctx, 2, 1, 0, 1);
  auto g = h.inverse() * LocalMatrix::from_ints(ctx, 2, 0, 0, 1) * h;
  auto rep2 = fixed_set(g, 3);
  CHECK(rep2.k_tree == 1);
  CHECK(k_of(g) == 1);
  CHECK(rep2.nearest_unique);
  CHECK(rep2.connected);
  CHECK_THROWS_AS(fixed_set(LocalMatrix::from_ints(ctx, 1, 0, 0, 2, -3), 2), NotStabilizable);
}

TEST_CASE("tree distance equals k on conjugated probes") {
  for (int p : {2, 3}) {
    auto ctx = LocalContext::make(p, 1, 12);
    Rng rng(900 + p);
    const ProbeKind kinds[] = {ProbeKind::TraceNonUnit, ProbeKind::EllFinite, ProbeKind::EllInfinite};
    int checked = 0;
    for (int i = 0; i < 100; ++i) {
      auto g = random_probe(ctx, rng, kinds[i % 3], 2);
      const int k = k_of(g);
      auto rep = fixed_set(g, std::max(k, 0) + 1);
      CHECK(rep.k_tree == k);
      CHECK(rep.nearest_unique);
      CHECK(rep.connected);
      ++checked;
    }
    CHECK(checked == 100);
  }
}

TEST_CASE("integral conjugation relocates the fixed set") {
  auto ctx = LocalContext::make(3, 1, 10);
  Rng rng(42);
  for (int i = 0; i < 10; ++i) {
    auto g = random_probe(ctx, rng, ProbeKind::EllFinite, 1);
    auto h = random_gl2_integral(ctx, rng);
    auto a = fixed_set(g, 3);
    auto b = fixed_set(h.inverse() * g * h, 3);
    std::set<TreeVertex> moved;
    for (const auto& v : a.stabilized) moved.insert(act(h.inverse(), v));
    CHECK(moved == std::set<TreeVertex>(b.stabilized.begin(), b.stabilized.end()));
  }
}

TEST_CASE("stabilized line counts, exhaustive mod p") {
  auto c2 = LocalContext::make(2, 1, 6);
  CHECK(stabilized_line_count(LocalMatrix::from_ints(c2, 2, 0, 0, 3)) == 2);
  CHECK(stabilized_line_count(LocalMatrix::from_ints(c2, 0, 1, -2, 0)) == 1);
  for (int p : {2, 3}) {
    auto ctx = LocalContext::make(p, 1, 6);
    int tested = 0;
    for (int a = 0; a < p; ++a)
      for (int b = 0; b < p; ++b)
        for (int c = 0; c < p; ++c)
          for (int d = 0; d < p; ++d) {
            if ((a * d - b * c) % p != 0 || (a == 0 && b == 0 && c == 0 && d == 0)) continue;
            // lift with determinant valuation exactly 1
            std::optional<LocalMatrix> g;
            for (int e = 0; e < p * p * p * p && !g; ++e) {
              try {
                auto cand = LocalMatrix::from_ints(ctx, a + p * (e % p), b + p * (e / p % p), c + p * (e / p / p % p),
                                                   d + p * (e / p / p / p));
                if (cand.determinant().valuation_capped(2) == 1) g = cand;
              } catch (const DomainError&) {
                // singular lift
              }
            }
            REQUIRE(g);
            const int count = stabilized_line_count(*g);
            CHECK(count == ((a + d) % p == 0 ? 1 : 2));
            int moved = 0;
            for (const auto& v : neighbors(ctx, TreeVertex{0, 0, {0}})) {
              if (!stabilizes(*g, v)) ++moved;
            }
            CHECK(moved == ((a + d) % p == 0 ? p : p - 1));
            ++tested;
          }
    CHECK(tested == (p == 2 ? 9 : 32));
  }
}

TEST_CASE("orbital ratio examples") {
  auto c2 = LocalContext::make(2, 1, 8);
  CHECK(orbital_ratio(LocalMatrix::from_ints(c2, 0, 1, -2, 0), 1).ratio == -3);
  CHECK(orbital_ratio(LocalMatrix::from_ints(c2, 2, 0, 0, 1), 1).ratio == 3);
  CHECK(orbital_ratio(LocalMatrix::from_ints(c2, 2, 0, 0, 1), 1).weighted_sum == 3);
  CHECK(orbital_ratio(LocalMatrix::from_ints(c2, 2, 0, 0, 3), 2).ratio == 0);
  CHECK_THROWS_AS(orbital_ratio(LocalMatrix::from_ints(c2, 4, 0, 0, 1), 1), DomainError);
  auto flagged = orbital_ratio(LocalMatrix::from_ints(c2, 1, 0, 0, 8, -1), 1);
  CHECK(flagged.ratio == 0);
  CHECK(flagged.flag.has_value());
}

TEST_CASE("orbital ratio equals the closed form with per-branch weighted sums") {
  for (auto [p, n] : {std::pair{2, 1}, std::pair{2, 2}, std::pair{3, 1}, std::pair{3, 2}}) {
    auto ctx = LocalContext::make(p, 1, 2 * n + 6);
    Rng rng(300 + 10 * p + n);
    const ProbeKind kinds[] = {ProbeKind::TraceNonUnit, ProbeKind::EllFinite, ProbeKind::EllInfinite};
    std::set<std::string> branches;
    const Rational q = p;
    for (int i = 0; i < 60; ++i) {
      auto g = random_probe(ctx, rng, kinds[i % 3], n + 1);
      auto o = orbital_ratio(g, n);
      auto inv = GammaInvariants::of(g, n);
      CHECK(o.ratio == Rational(c_closed(inv, n, p)));
      branches.insert(o.branch);
      Rational geometric = 0;
      for (int j = 0; j < n; ++j) geometric += Rational(ipow(Integer(p), j));
      if (o.branch == "trace-nonunit") CHECK(o.weighted_sum == -(1 + q) * geometric);
      if (o.branch == "ell-at-least-n") {
        CHECK(o.weighted_sum == Rational(ipow(Integer(p), 2 * n - 1) + ipow(Integer(p), 2 * n - 2)));
      }
      if (o.branch == "ell-below-n") CHECK(o.weighted_sum == 0);
    }
    // ell < n is impossible at q = 2, n = 1
    CHECK(branches.size() == (p == 2 && n == 1 ? 2u : 3u));
  }
}
