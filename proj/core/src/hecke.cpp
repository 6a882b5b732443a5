#include "gl2lab/hecke.hpp"

#include <sstream>

#include "gl2lab/bt_tree.hpp"
#include "gl2lab/errors.hpp"
#include "gl2lab/finite_group.hpp"
#include "gl2lab/test_functions.hpp"

namespace gl2lab {

namespace {

std::string join(const std::vector<std::int64_t>& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ")";
  return os.str();
}

ExactElement digits(const LocalContext& ctx, long long code, int base) {
  ExactElement x(ctx.r());
  for (auto& c : x) {
    c = integer_of(code % base);
    code /= base;
  }
  return x;
}

ExactElement lift(const GaloisRingElement& x) {
  ExactElement out;
  for (auto c : x.coeffs()) out.push_back(integer_of(c));
  return out;
}

LocalMatrix lift_group_element(const ContextPtr& ctx, const FiniteGL2& g, MatCode x) {
  const auto e = g.entries(x);
  const FiniteRing& ring = g.ring();
  return LocalMatrix::from_exact(ctx, {lift(ring.element(e[0])), lift(ring.element(e[1])), lift(ring.element(e[2])),
                                       lift(ring.element(e[3]))});
}

// 1 + p^n X for X given by its entries.
LocalMatrix principal_unit(const ContextPtr& ctx, int n, const std::array<ExactElement, 4>& x) {
  const Integer pn = ipow(integer_of(ctx->p()), static_cast<unsigned long>(n));
  const ExactElement one{Integer(1)};
  return LocalMatrix::from_exact(ctx, {exact::add(one, exact::scale(x[0], pn)), exact::scale(x[1], pn),
                                       exact::scale(x[2], pn), exact::add(one, exact::scale(x[3], pn))});
}

RationalFunctionT zero_of(long long q) { return RationalFunctionT::constant(q, Rational(0)); }

}  // namespace

std::string CosetKey::to_string() const {
  std::ostringstream os;
  os << "e=" << exponent << " H=[[p^" << a << "," << join(c) << "],[0,p^" << b << "]] k=[";
  for (int i = 0; i < 4; ++i) os << (i ? "," : "") << join(k[i]);
  os << "]";
  return os.str();
}

CosetKey coset_key(const LocalMatrix& g, int n) {
  const TreeVertex v = vertex_of(g);
  CosetKey key;
  key.exponent = g.exponent();
  key.a = v.a;
  key.b = v.b;
  key.c = v.c;
  const int prec = g.precision();
  if (prec - v.a - v.b < n) {
    throw PrecisionExhausted("coset key at level " + std::to_string(n) + " needs precision " +
                             std::to_string(n + v.a + v.b));
  }
  if (n == 0) return key;
  const auto& ctx = g.context();
  const auto& m = g.entries();
  std::vector<std::int64_t> cc(v.c);
  cc.resize(ctx->r(), 0);
  const GaloisRingElement c = GaloisRingElement::from_coeffs(ctx, cc);
  for (int j = 0; j < 2; ++j) {
    const GaloisRingElement lower = m[2 + j].truncated(prec).divided_by_p(v.b);
    const GaloisRingElement upper = (m[j] - c * lower).truncated(prec - v.b).divided_by_p(v.a);
    key.k[j] = upper.truncated(n).coeffs();
    key.k[2 + j] = lower.truncated(n).coeffs();
  }
  return key;
}

bool in_congruence_subgroup(const LocalMatrix& x, int n) {
  if (x.exponent() != 0) return false;
  if (x.determinant().valuation_capped(1) != 0) return false;
  if (n == 0) return true;
  if (x.precision() < n) throw PrecisionExhausted("membership in Gamma(p^n) needs precision n");
  const auto& m = x.entries();
  const auto one = GaloisRingElement::from_int(x.context(), 1);
  return (m[0] - one).truncated(n).is_zero() && m[1].truncated(n).is_zero() && m[2].truncated(n).is_zero() &&
         (m[3] - one).truncated(n).is_zero();
}

bool same_right_coset(const LocalMatrix& g, const LocalMatrix& g2, int n) {
  return in_congruence_subgroup(left_quotient(g, g2), n);
}

Rational congruence_volume(int p, int r, int n) {
  const long long q = ipow_ll(p, r);
  if (n == 0) return rational_of(q - 1);
  return Rational(rational_of(q - 1) / rational_of(gl2_order(p, r, n)));
}

CosetFunction::CosetFunction(ContextPtr ctx, int level) : ctx_(std::move(ctx)), level_(level) {
  if (level < 0) throw DomainError("level must be non-negative");
}

void CosetFunction::set(const LocalMatrix& rep, const RationalFunctionT& value) {
  const CosetKey key = coset_key(rep, level_);
  if (value.is_zero()) {
    support_.erase(key);
    return;
  }
  support_.insert_or_assign(key, Entry{rep, value});
}

void CosetFunction::add(const LocalMatrix& rep, const RationalFunctionT& value) {
  const CosetKey key = coset_key(rep, level_);
  auto it = support_.find(key);
  if (it == support_.end()) {
    if (!value.is_zero()) support_.emplace(key, Entry{rep, value});
    return;
  }
  it->second.value += value;
  if (it->second.value.is_zero()) support_.erase(it);
}

RationalFunctionT CosetFunction::operator()(const LocalMatrix& g) const {
  const auto it = support_.find(coset_key(g, level_));
  return it == support_.end() ? zero_of(q()) : it->second.value;
}

LocalFunction CosetFunction::as_function() const {
  return [self = *this](const LocalMatrix& g) { return self(g); };
}

CosetFunction CosetFunction::idempotent(ContextPtr ctx, int n) {
  CosetFunction f(ctx, n);
  const Rational vol = congruence_volume(ctx->p(), ctx->r(), n);
  f.set(LocalMatrix::identity(ctx), RationalFunctionT::constant(ctx->q(), Rational(1) / vol));
  return f;
}

CosetFunction CosetFunction::double_coset_indicator(ContextPtr ctx, int n, const LocalMatrix& x) {
  CosetFunction f(ctx, n);
  const CosetKey base = coset_key(x, n);
  const int s = base.a + base.b;
  const auto one = RationalFunctionT::constant(ctx->q(), Rational(1));
  if (n == 0) {
    if (s == 0) {
      f.set(x, one);
      return f;
    }
    const auto g = FiniteGL2::make(ctx->p(), ctx->r(), s);
    for (MatCode k : g->elements()) f.set(lift_group_element(ctx, *g, k) * x, one);
    return f;
  }
  const long long pieces = ipow_ll(ctx->p(), s * ctx->r());
  long long total = 1;
  for (int i = 0; i < 4; ++i) total *= pieces;
  check_resource(total, "double coset transversal");
  const int base_digit = static_cast<int>(ipow_ll(ctx->p(), s));
  for (long long code = 0; code < total; ++code) {
    std::array<ExactElement, 4> xs;
    long long t = code;
    for (auto& e : xs) {
      e = digits(*ctx, t % pieces, base_digit);
      t /= pieces;
    }
    f.set(principal_unit(ctx, n, xs) * x, one);
  }
  return f;
}

std::vector<LocalMatrix> phi_support_cosets(const ContextPtr& ctx, int n) {
  if (n < 1) throw DomainError("phi_{p,n} needs n >= 1");
  const int p = ctx->p();
  const int r = ctx->r();
  const auto group = FiniteGL2::make(p, r, n);
  std::vector<LocalMatrix> lattices;
  for (int e = 0; e >= -(n - 1); --e) {
    const int d = 1 - 2 * e;
    for (int a = 0; a <= d; ++a) {
      const int b = d - a;
      const long long pa = ipow_ll(p, a);
      const long long count = ipow_ll(pa, r);
      for (long long code = 0; code < count; ++code) {
        TreeVertex v{a, b, {}};
        long long t = code;
        bool unit = false;
        for (int i = 0; i < r; ++i) {
          v.c.push_back(t % pa);
          unit = unit || (t % pa) % p != 0;
          t /= pa;
        }
        if (a > 0 && b > 0 && !unit) continue;
        lattices.push_back(hermite_basis(ctx, v).times_p(e));
      }
    }
  }
  check_resource(static_cast<long long>(lattices.size()) * group->order(), "phi support cosets");
  std::vector<LocalMatrix> out;
  out.reserve(lattices.size() * group->elements().size());
  for (const auto& h : lattices) {
    for (MatCode k : group->elements()) out.push_back(h * lift_group_element(ctx, *group, k));
  }
  return out;
}

CosetFunction CosetFunction::phi(ContextPtr ctx, int n, bool deformed) {
  CosetFunction f(ctx, n);
  for (const auto& g : phi_support_cosets(ctx, n)) {
    f.set(g, deformed ? phi_pnt(g, n) : RationalFunctionT::constant(ctx->q(), phi_pn(g, n)));
  }
  return f;
}

CosetFunction CosetFunction::phi_zero(ContextPtr ctx) {
  CosetFunction f(ctx, 0);
  const int p = ctx->p();
  const long long q = ctx->q();
  f.set(LocalMatrix::from_ints(ctx, 1, 0, 0, p), RationalFunctionT::constant(q, phi_p0(LocalMatrix::from_ints(ctx, 1, 0, 0, p))));
  for (long long code = 0; code < q; ++code) {
    const LocalMatrix g = LocalMatrix::from_exact(ctx, {ExactElement{p}, digits(*ctx, code, p), ExactElement{0},
                                                        ExactElement{1}});
    f.set(g, RationalFunctionT::constant(q, phi_p0(g)));
  }
  return f;
}

RationalFunctionT convolve_at(const CosetFunction& f1, const LocalFunction& f2, const LocalMatrix& g) {
  RationalFunctionT acc = zero_of(f1.q());
  for (const auto& [key, entry] : f1.support()) {
    const RationalFunctionT v = f2(left_quotient(entry.rep, g));
    if (!v.is_zero()) acc += entry.value * v;
  }
  return acc * congruence_volume(f1.context()->p(), f1.context()->r(), f1.level());
}

CosetFunction convolve(const CosetFunction& f1, const CosetFunction& f2) {
  if (f1.level() != f2.level()) throw DomainError("convolution needs a common level");
  CosetFunction out(f1.context(), f1.level());
  std::map<CosetKey, bool> seen;
  const LocalFunction f2_fn = f2.as_function();
  for (const auto& [k1, e1] : f1.support()) {
    for (const auto& [k2, e2] : f2.support()) {
      const LocalMatrix x = e1.rep * e2.rep;
      const CosetKey key = coset_key(x, f1.level());
      if (!seen.emplace(key, true).second) continue;
      out.set(x, convolve_at(f1, f2_fn, x));
    }
  }
  return out;
}

bool left_invariant_at(const CosetFunction& f, const std::vector<LocalMatrix>& points, Rng& rng, int translates) {
  const auto& ctx = f.context();
  for (const auto& g : points) {
    const RationalFunctionT v = f(g);
    for (int i = 0; i < translates; ++i) {
      LocalMatrix u = LocalMatrix::identity(ctx);
      if (f.level() == 0) {
        u = random_gl2_integral(ctx, rng);
      } else {
        std::array<ExactElement, 4> xs;
        for (auto& e : xs) e = random_exact_element(*ctx, rng, ctx->p() * ctx->p());
        u = principal_unit(ctx, f.level(), xs);
      }
      if (!(f(u * g) == v)) return false;
    }
  }
  return true;
}

namespace {

struct TowerSums {
  RationalFunctionT deformed;
  Rational undeformed;
};

TowerSums tower_sums(const LocalMatrix& g, int n) {
  const auto& ctx = g.context();
  const long long q = ctx->q();
  const long long total = q * q * q * q;
  TowerSums s{zero_of(q), Rational(0)};
  for (long long code = 0; code < total; ++code) {
    std::array<ExactElement, 4> xs;
    long long t = code;
    for (auto& e : xs) {
      e = digits(*ctx, t % q, ctx->p());
      t /= q;
    }
    const LocalMatrix gu = g * principal_unit(ctx, n, xs);
    s.deformed += phi_pnt(gu, n + 1);
    s.undeformed += phi_pn(gu, n + 1);
  }
  const Rational inv = Rational(1) / rational_of(total);
  s.deformed *= inv;
  s.undeformed *= inv;
  return s;
}

}  // namespace

RationalFunctionT tower_average(const LocalMatrix& g, int n) { return tower_sums(g, n).deformed; }

TowerReport tower_identity_check(const std::vector<LocalMatrix>& samples, int n) {
  TowerReport rep;
  rep.by_k.assign(n + 2, 0);
  for (const auto& g : samples) {
    ++rep.samples;
    const int k = k_of(g);
    rep.by_k[std::clamp(k, 0, n + 1)]++;
    rep.by_branch[static_cast<int>(classify_phi(g, n).branch)]++;
    const long long q = g.context()->q();
    const RationalFunctionT lhs = phi_pnt(g, n);
    const TowerSums rhs = tower_sums(g, n);
    const Rational undeformed = phi_pn(g, n);
    const bool ok = lhs == rhs.deformed;
    const bool spec_ok = lhs.evaluate(rational_of(q)) == undeformed && rhs.undeformed == undeformed;
    if (!ok) ++rep.failures;
    if (!spec_ok) ++rep.specialization_failures;
    if ((!ok || !spec_ok) && rep.counterexample.empty()) {
      rep.counterexample = g.to_string() + ": phi_n,t = " + lhs.to_string() + ", average = " + rhs.deformed.to_string();
    }
  }
  return rep;
}

std::vector<CentralityResult> centrality_check(const CosetFunction& phi,
                                               const std::vector<std::pair<std::string, CosetFunction>>& generators,
                                               const std::vector<LocalMatrix>& samples) {
  std::vector<CentralityResult> out;
  const LocalFunction phi_fn = phi.as_function();
  for (const auto& [name, f] : generators) {
    if (f.level() != phi.level()) throw DomainError("generator " + name + " has the wrong level");
    CentralityResult res;
    res.generator = name;
    const LocalFunction f_fn = f.as_function();
    for (const auto& g : samples) {
      ++res.samples;
      const RationalFunctionT left = convolve_at(phi, f_fn, g);
      const RationalFunctionT right = convolve_at(f, phi_fn, g);
      if (!left.is_zero()) ++res.nonzero;
      if (!(left == right)) {
        if (res.failures == 0) {
          res.counterexample = g.to_string() + ": " + left.to_string() + " vs " + right.to_string();
        }
        ++res.failures;
      }
    }
    out.push_back(std::move(res));
  }
  return out;
}

std::vector<LocalMatrix> product_samples(const CosetFunction& a, const CosetFunction& b, Rng& rng, int count) {
  std::vector<LocalMatrix> ra, rb;
  for (const auto& [k, e] : a.support()) ra.push_back(e.rep);
  for (const auto& [k, e] : b.support()) rb.push_back(e.rep);
  if (ra.empty() || rb.empty()) throw DomainError("product samples need nonempty supports");
  std::vector<LocalMatrix> out;
  for (int i = 0; i < count; ++i) {
    const LocalMatrix& x = ra[rng() % ra.size()];
    const LocalMatrix& y = rb[rng() % rb.size()];
    LocalMatrix g = (i % 2 == 0) ? x * y : y * x;
    if (i % 4 == 3) g = g * random_gl2_integral(a.context(), rng);
    out.push_back(g);
  }
  return out;
}

}  // namespace gl2lab
