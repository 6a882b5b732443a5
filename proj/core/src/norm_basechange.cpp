#include "gl2lab/norm_basechange.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "gl2lab/errors.hpp"

namespace gl2lab {

MatCode finite_norm(const FiniteGL2& g, MatCode delta) {
  MatCode acc = delta;
  MatCode s = delta;
  for (int i = 1; i < g.ring().r(); ++i) {
    s = g.frob(s);
    acc = g.mul(acc, s);
  }
  return acc;
}

MatCode embed_prime(const FiniteGL2& base, const FiniteGL2& ext, MatCode x) {
  const auto e = base.entries(x);
  return ext.make(e[0], e[1], e[2], e[3]);
}

std::optional<MatCode> restrict_prime(const FiniteGL2& ext, const FiniteGL2& base, MatCode x) {
  const auto e = ext.entries(x);
  std::array<int, 4> v{};
  for (int i = 0; i < 4; ++i) {
    v[i] = ext.ring().prime_value(e[i]);
    if (v[i] < 0) return std::nullopt;
  }
  return base.make(v[0], v[1], v[2], v[3]);
}

SigmaOrbitTable sigma_orbits(int p, int r, int n) {
  check_resource(gl2_order(p, r, n), "GL2(GR(p^n, r))");
  SigmaOrbitTable t;
  t.p = p;
  t.r = r;
  t.n = n;
  t.group = FiniteGL2::make(p, r, n);
  t.base = FiniteGL2::make(p, 1, n);
  const FiniteGL2& g = *t.group;
  const FiniteGL2& h = *t.base;

  std::vector<std::pair<MatCode, MatCode>> moves;  // (s^{-1}, sigma(s))
  for (MatCode s : g.generators()) moves.emplace_back(g.inv(s), g.frob(s));

  t.orbit_of.assign(g.code_space(), -1);
  std::vector<std::vector<MatCode>> members;
  for (MatCode x : g.elements()) {
    if (t.orbit_of[x] != -1) continue;
    const int id = static_cast<int>(members.size());
    members.emplace_back();
    std::deque<MatCode> queue{x};
    t.orbit_of[x] = id;
    while (!queue.empty()) {
      const MatCode y = queue.front();
      queue.pop_front();
      members[id].push_back(y);
      for (const auto& [si, fs] : moves) {
        const MatCode z = g.mul(si, g.mul(y, fs));
        if (t.orbit_of[z] == -1) {
          t.orbit_of[z] = id;
          queue.push_back(z);
        }
      }
    }
  }

  for (const auto& orbit : members) {
    SigmaOrbit o;
    o.rep = orbit.front();
    o.size = static_cast<long long>(orbit.size());
    for (MatCode x : g.elements()) {
      // x^{-1} rep sigma(x) = rep  <=>  rep sigma(x) = x rep
      if (g.mul(o.rep, g.frob(x)) == g.mul(x, o.rep)) ++o.twisted_centralizer;
    }
    std::set<int> ext_classes;
    std::set<int> base_classes;
    for (MatCode y : orbit) {
      const MatCode nrm = finite_norm(g, y);
      ext_classes.insert(g.class_of(nrm));
      if (auto b = restrict_prime(g, h, nrm)) base_classes.insert(h.class_of(*b));
    }
    if (base_classes.size() == 1) {
      o.norm_class = *base_classes.begin();
      o.norm_centralizer = h.order() / h.class_sizes()[o.norm_class];
      const MatCode lifted = embed_prime(h, g, h.class_reps()[o.norm_class]);
      o.norms_consistent = ext_classes.size() == 1 && g.class_of(lifted) == *ext_classes.begin();
    }
    t.orbits.push_back(o);
  }

  std::set<int> hit;
  t.orbit_stabilizer = true;
  t.centralizers_match = true;
  long long total = 0;
  bool divisible = true;
  for (const auto& o : t.orbits) {
    if (o.norm_class >= 0) hit.insert(o.norm_class);
    t.orbit_stabilizer = t.orbit_stabilizer && o.size * o.twisted_centralizer == g.order();
    t.centralizers_match = t.centralizers_match && o.twisted_centralizer == o.norm_centralizer;
    if (o.norm_centralizer > 0 && g.order() % o.norm_centralizer == 0) {
      total += g.order() / o.norm_centralizer;
    } else {
      divisible = false;
    }
  }
  t.bijection = static_cast<int>(t.orbits.size()) == h.num_classes() &&
                static_cast<int>(hit.size()) == h.num_classes() &&
                std::all_of(t.orbits.begin(), t.orbits.end(), [](const SigmaOrbit& o) { return o.norm_class >= 0; });
  t.counting_identity = divisible && total == g.order();
  return t;
}

ExactSequenceReport unit_group_exactness(const FiniteGL2& base, const FiniteGL2& ext, MatCode gamma) {
  const FiniteRing& rb = base.ring();
  const FiniteRing& re = ext.ring();
  const MatCode gamma_e = embed_prime(base, ext, gamma);
  const auto ge = ext.entries(gamma_e);

  auto linear = [&](const FiniteRing& k, const std::array<int, 4>& m, int a, int b) {
    return std::array<int, 4>{k.add(a, k.mul(b, m[0])), k.mul(b, m[1]), k.mul(b, m[2]), k.add(a, k.mul(b, m[3]))};
  };

  std::set<MatCode> base_units;
  const auto gb = base.entries(gamma);
  for (int a = 0; a < rb.size(); ++a) {
    for (int b = 0; b < rb.size(); ++b) {
      const auto e = linear(rb, gb, a, b);
      const MatCode x = base.make(e[0], e[1], e[2], e[3]);
      if (base.in_group(x)) base_units.insert(embed_prime(base, ext, x));
    }
  }
  std::set<MatCode> ext_units;
  for (int a = 0; a < re.size(); ++a) {
    for (int b = 0; b < re.size(); ++b) {
      const auto e = linear(re, ge, a, b);
      const MatCode x = ext.make(e[0], e[1], e[2], e[3]);
      if (ext.in_group(x)) ext_units.insert(x);
    }
  }

  ExactSequenceReport rep;
  rep.base_units = static_cast<long long>(base_units.size());
  rep.ext_units = static_cast<long long>(ext_units.size());
  rep.injective = std::includes(ext_units.begin(), ext_units.end(), base_units.begin(), base_units.end());

  std::set<MatCode> ker_d1, im_d1, ker_d2, im_d2;
  const MatCode one = ext.identity();
  for (MatCode x : ext_units) {
    const MatCode fx = ext.frob(x);
    if (fx == x) ker_d1.insert(x);
    im_d1.insert(ext.mul(x, ext.inv(fx)));
    const MatCode nx = finite_norm(ext, x);
    if (nx == one) ker_d2.insert(x);
    im_d2.insert(nx);
  }
  rep.exact_at_first = ker_d1 == base_units;
  rep.exact_at_middle = im_d1 == ker_d2;
  rep.surjective = im_d2 == base_units;
  return rep;
}

namespace {

std::vector<MatCode> congruence_subgroup(const FiniteGL2& g, int k) {
  std::vector<MatCode> out;
  const FiniteRing& ring = g.ring();
  const int one = ring.reduce(1, k);
  for (MatCode x : g.elements()) {
    const auto e = g.entries(x);
    if (ring.reduce(e[0], k) == one && ring.reduce(e[1], k) == 0 && ring.reduce(e[2], k) == 0 &&
        ring.reduce(e[3], k) == one) {
      out.push_back(x);
    }
  }
  return out;
}

}  // namespace

BcUnitReport bc_unit_identity(const SigmaOrbitTable& table, const BaseClassFunction& f, int k) {
  if (k < 0 || k > table.n) throw DomainError("need 0 <= k <= j");
  if (!table.bijection) throw DomainError("norm map on sigma-orbits is not a bijection; identity undefined");
  const FiniteGL2& g = *table.group;
  const FiniteGL2& h = *table.base;
  const auto gamma_g = congruence_subgroup(g, k);
  const auto gamma_h = congruence_subgroup(h, k);

  std::vector<Rational> f_class(h.num_classes());
  std::vector<Rational> rhs_class(h.num_classes());
  for (int c = 0; c < h.num_classes(); ++c) {
    const MatCode rep = h.class_reps()[c];
    f_class[c] = f(rep);
    Rational acc = 0;
    for (MatCode u : gamma_h) acc += f(h.mul(rep, u));
    rhs_class[c] = acc / rational_of(static_cast<long long>(gamma_h.size()));
  }
  std::vector<Rational> phi_orbit(table.orbits.size());
  for (std::size_t o = 0; o < table.orbits.size(); ++o) phi_orbit[o] = f_class[table.orbits[o].norm_class];

  BcUnitReport rep;
  rep.coset_size = static_cast<long long>(gamma_g.size());
  const Rational inv_size = Rational(1) / rational_of(rep.coset_size);
  std::vector<long long> hits(table.orbits.size(), 0);
  for (MatCode delta : g.elements()) {
    ++rep.deltas;
    std::fill(hits.begin(), hits.end(), 0);
    for (MatCode u : gamma_g) ++hits[table.orbit_of[g.mul(delta, u)]];
    Rational lhs = 0;
    for (std::size_t o = 0; o < hits.size(); ++o) {
      if (hits[o] != 0) lhs += rational_of(hits[o]) * phi_orbit[o];
    }
    lhs *= inv_size;
    const Rational rhs = rhs_class[table.orbits[table.orbit_of[delta]].norm_class];
    if (lhs != rhs) {
      if (rep.failures == 0) {
        rep.counterexample = "delta code " + std::to_string(delta) + ": " + lhs.get_str() + " != " + rhs.get_str();
      }
      ++rep.failures;
    }
  }
  return rep;
}

}  // namespace gl2lab
