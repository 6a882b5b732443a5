#include <random>
#include <set>

#include "doctest.h"
#include "gl2lab/norm_basechange.hpp"

using namespace gl2lab;

namespace {

// sigma-orbits by applying every h, O(|G|^2).
int brute_force_orbit_count(const FiniteGL2& g) {
  std::vector<char> seen(g.code_space(), 0);
  int count = 0;
  for (MatCode x : g.elements()) {
    if (seen[x]) continue;
    ++count;
    for (MatCode h : g.elements()) seen[g.mul(g.inv(h), g.mul(x, g.frob(h)))] = 1;
  }
  return count;
}

long long centralizer_order(const FiniteGL2& g, MatCode x) {
  long long c = 0;
  for (MatCode h : g.elements()) c += g.mul(h, x) == g.mul(x, h);
  return c;
}

}  // namespace

TEST_CASE("sigma orbits of GL2(F_4) match classes of GL2(F_2)") {
  auto t = sigma_orbits(2, 2, 1);
  CHECK(t.orbits.size() == 3);
  CHECK(t.base->num_classes() == 3);
  CHECK(brute_force_orbit_count(*t.group) == 3);
  CHECK(t.all_pass());
  long long total = 0;
  for (const auto& o : t.orbits) total += o.size;
  CHECK(total == 180);
}

TEST_CASE("identity orbit maps to the identity class") {
  auto t = sigma_orbits(2, 2, 1);
  const FiniteGL2& g = *t.group;
  const FiniteGL2& h = *t.base;
  CHECK(finite_norm(g, g.identity()) == g.identity());
  const auto& o = t.orbits[t.orbit_of[g.identity()]];
  CHECK(h.class_reps()[o.norm_class] == h.identity());
  // Lang: the identity's sigma-orbit is everything of the form h^{-1} sigma(h), size |G| / |GL2(F_2)|
  CHECK(o.size == 180 / 6);
}

TEST_CASE("twisted centralizers match centralizers of norms at (3,2,1)") {
  auto t = sigma_orbits(3, 2, 1);
  CHECK(t.bijection);
  CHECK(t.orbits.size() == static_cast<std::size_t>(t.base->num_classes()));
  for (const auto& o : t.orbits) {
    const long long direct = centralizer_order(*t.base, t.base->class_reps()[o.norm_class]);
    CHECK(o.twisted_centralizer == direct);
    CHECK(o.norms_consistent);
  }
  CHECK(t.all_pass());
}

TEST_CASE("norm bijection at (2,3,1) and (2,2,2)") {
  CHECK(sigma_orbits(2, 3, 1).all_pass());
  auto t = sigma_orbits(2, 2, 2);
  CHECK(t.group->order() == 46080);
  CHECK(t.all_pass());
}

TEST_CASE("unit group exact sequence") {
  for (auto [p, r, n] : {std::tuple{2, 2, 1}, std::tuple{2, 2, 2}, std::tuple{3, 2, 1}}) {
    auto base = FiniteGL2::make(p, 1, n);
    auto ext = FiniteGL2::make(p, r, n);
    auto id = unit_group_exactness(*base, *ext, base->identity());
    CHECK(id.all_pass());
    // gamma = 1: Z/p^n units inside GR units
    CHECK(id.base_units == (p - 1) * ipow_ll(p, n - 1));
    std::mt19937_64 rng(7);
    for (int i = 0; i < 20; ++i) {
      const MatCode gamma = base->elements()[rng() % base->elements().size()];
      auto rep = unit_group_exactness(*base, *ext, gamma);
      CHECK_MESSAGE(rep.all_pass(), "gamma code " << gamma);
    }
  }
}

TEST_CASE("scalar gamma behaves like the identity") {
  auto base = FiniteGL2::make(3, 1, 1);
  auto ext = FiniteGL2::make(3, 2, 1);
  auto a = unit_group_exactness(*base, *ext, base->identity());
  auto b = unit_group_exactness(*base, *ext, base->make(2, 0, 0, 2));
  CHECK(a.base_units == b.base_units);
  CHECK(a.ext_units == b.ext_units);
  CHECK(b.all_pass());
}

TEST_CASE("base change unit identity") {
  auto t = sigma_orbits(2, 2, 2);
  const FiniteGL2& h = *t.base;
  SUBCASE("constant") {
    auto rep = bc_unit_identity(t, [](MatCode) { return Rational(5, 3); }, 1);
    CHECK(rep.pass());
    CHECK(rep.coset_size == 256);
  }
  SUBCASE("class indicators, k = 1") {
    for (int c = 0; c < h.num_classes(); ++c) {
      auto rep = bc_unit_identity(t, [&](MatCode x) { return Rational(h.class_of(x) == c ? 1 : 0); }, 1);
      CHECK_MESSAGE(rep.pass(), rep.counterexample);
    }
  }
  SUBCASE("trace and fixed vectors, k = 1") {
    auto trace = [&](MatCode x) { return rational_of(h.trace(x)); };
    auto fixed = [&](MatCode x) {
      const auto e = h.entries(x);
      const FiniteRing& k = h.ring();
      long long c = 0;
      for (int v0 = 0; v0 < k.size(); ++v0)
        for (int v1 = 0; v1 < k.size(); ++v1)
          c += k.add(k.mul(e[0], v0), k.mul(e[1], v1)) == v0 && k.add(k.mul(e[2], v0), k.mul(e[3], v1)) == v1;
      return rational_of(c);
    };
    CHECK(bc_unit_identity(t, trace, 1).pass());
    CHECK(bc_unit_identity(t, fixed, 1).pass());
  }
  SUBCASE("k = 0 averages over the whole group") {
    auto small = sigma_orbits(2, 2, 1);
    const FiniteGL2& b = *small.base;
    auto rep = bc_unit_identity(small, [&](MatCode x) { return rational_of(b.trace(x)); }, 0);
    CHECK(rep.coset_size == 180);
    CHECK(rep.pass());
  }
  SUBCASE("k = j is pointwise") {
    auto rep = bc_unit_identity(t, [&](MatCode x) { return rational_of(h.class_of(x)); }, 2);
    CHECK(rep.coset_size == 1);
    CHECK(rep.pass());
  }
}
