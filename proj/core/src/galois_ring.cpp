#include "gl2lab/galois_ring.hpp"

#include <cstdlib>
#include <sstream>

#include "gl2lab/errors.hpp"

namespace gl2lab {

namespace {

using Coeffs = std::array<std::int64_t, kMaxDegree>;

std::int64_t mod_reduce(__int128 v, std::int64_t m) {
  __int128 r = v % m;
  if (r < 0) r += m;
  return static_cast<std::int64_t>(r);
}

// Polynomial helpers over F_p, lowest degree first, used only for the
// irreducibility search.
std::vector<int> poly_mod(std::vector<int> a, const std::vector<int>& b, int p) {
  // b monic
  const int db = static_cast<int>(b.size()) - 1;
  while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
    const int lead = a.back();
    const int shift = static_cast<int>(a.size()) - 1 - db;
    if (lead != 0) {
      for (int i = 0; i <= db; ++i) {
        a[shift + i] = ((a[shift + i] - lead * b[i]) % p + p) % p;
      }
    }
    a.pop_back();
  }
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

bool irreducible_over_fp(const std::vector<int>& f, int p) {
  const int deg = static_cast<int>(f.size()) - 1;
  for (int d = 1; d <= deg / 2; ++d) {
    // every monic divisor candidate of degree d
    long long count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (long long code = 0; code < count; ++code) {
      std::vector<int> g(d + 1, 0);
      long long c = code;
      for (int i = 0; i < d; ++i) {
        g[i] = static_cast<int>(c % p);
        c /= p;
      }
      g[d] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

Coeffs poly_mul(const LocalContext& ctx, const Coeffs& a, const Coeffs& b) {
  const int r = ctx.r();
  const std::int64_t m = ctx.modulus();
  std::array<__int128, 2 * kMaxDegree> prod{};
  for (int i = 0; i < r; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < r; ++j) {
      prod[i + j] = (prod[i + j] + static_cast<__int128>(a[i]) * b[j]) % m;
    }
  }
  Coeffs out{};
  const auto& table = ctx.reduction_table();
  for (int k = 0; k <= 2 * r - 2; ++k) {
    if (prod[k] == 0) continue;
    const std::int64_t c = static_cast<std::int64_t>(prod[k]);
    for (int i = 0; i < r; ++i) {
      out[i] = mod_reduce(static_cast<__int128>(out[i]) + static_cast<__int128>(c) * table[k][i], m);
    }
  }
  return out;
}

}  // namespace

long long max_elements() {
  static const long long cap = [] {
    if (const char* env = std::getenv("GL2LAB_MAX_ELEMS")) {
      char* end = nullptr;
      const long long v = std::strtoll(env, &end, 10);
      if (end != env && v > 0) return v;
    }
    return 2'000'000LL;
  }();
  return cap;
}

void check_resource(long long count, const std::string& what) {
  if (count > max_elements()) {
    throw ResourceLimit(what + ": " + std::to_string(count) + " elements exceeds cap " +
                        std::to_string(max_elements()) + " (GL2LAB_MAX_ELEMS)");
  }
}

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<int> smallest_irreducible(int p, int r) {
  long long count = 1;
  for (int i = 0; i < r; ++i) count *= p;
  for (long long code = 0; code < count; ++code) {
    std::vector<int> f(r + 1, 0);
    long long c = code;
    for (int i = 0; i < r; ++i) {
      f[i] = static_cast<int>(c % p);
      c /= p;
    }
    f[r] = 1;
    if (irreducible_over_fp(f, p)) {
      f.pop_back();
      return f;
    }
  }
  throw DomainError("no irreducible polynomial found");  // unreachable for prime p
}

std::shared_ptr<const LocalContext> LocalContext::make(int p, int r, int precision) {
  if (!is_prime(p)) throw DomainError("p = " + std::to_string(p) + " is not prime");
  if (r < 1 || r > kMaxDegree) throw DomainError("degree r must lie in [1, 8]");
  if (precision < 1) throw DomainError("precision N must be >= 1");

  auto ctx = std::shared_ptr<LocalContext>(new LocalContext());
  ctx->p_ = p;
  ctx->r_ = r;
  ctx->precision_ = precision;
  ctx->pow_p_.assign(precision + 1, 1);
  for (int j = 1; j <= precision; ++j) {
    if (ctx->pow_p_[j - 1] > (std::int64_t{1} << 62) / p) {
      throw DomainError("p^N does not fit the 62-bit coefficient range");
    }
    ctx->pow_p_[j] = ctx->pow_p_[j - 1] * p;
  }
  ctx->q_ = 1;
  for (int i = 0; i < r; ++i) ctx->q_ *= p;
  ctx->poly_ = smallest_irreducible(p, r);

  const std::int64_t m = ctx->modulus();
  // x^k for k < 2r-1: x^r = -sum f_i x^i.
  ctx->reduce_.assign(std::max(1, 2 * r - 1), Coeffs{});
  for (int k = 0; k < r && k < 2 * r - 1; ++k) ctx->reduce_[k][k] = 1 % m;
  if (r == 1) ctx->reduce_[0][0] = 1 % m;
  for (int k = r; k <= 2 * r - 2; ++k) {
    // multiply x^{k-1} by x
    const Coeffs& prev = ctx->reduce_[k - 1];
    Coeffs cur{};
    const std::int64_t top = prev[r - 1];
    for (int i = r - 1; i >= 1; --i) cur[i] = prev[i - 1];
    cur[0] = 0;
    for (int i = 0; i < r; ++i) {
      cur[i] = mod_reduce(static_cast<__int128>(cur[i]) - static_cast<__int128>(top) * ctx->poly_[i], m);
    }
    ctx->reduce_[k] = cur;
  }

  // Frobenius: Hensel-lift the root of f congruent to x^p.
  std::shared_ptr<const LocalContext> frozen = ctx;
  ctx->frob_.assign(r, Coeffs{});
  if (r == 1) {
    ctx->frob_[0][0] = 1 % m;
    return ctx;
  }
  auto eval_f = [&](const GaloisRingElement& y) {
    GaloisRingElement acc = GaloisRingElement::from_int(frozen, 1);  // leading term y^r
    for (int i = r - 1; i >= 0; --i) {
      acc = acc * y + GaloisRingElement::from_int(frozen, ctx->poly_[i]);
    }
    return acc;
  };
  auto eval_df = [&](const GaloisRingElement& y) {
    GaloisRingElement acc = GaloisRingElement::from_int(frozen, r);
    for (int i = r - 1; i >= 1; --i) {
      acc = acc * y + GaloisRingElement::from_int(frozen, static_cast<std::int64_t>(i) * ctx->poly_[i]);
    }
    return acc;
  };
  GaloisRingElement beta = GaloisRingElement::generator(frozen).pow(static_cast<std::uint64_t>(p));
  for (int iter = 0; iter < 2 * precision + 4; ++iter) {
    const GaloisRingElement fb = eval_f(beta);
    if (fb.is_zero()) break;
    beta -= fb * eval_df(beta).inverse();
  }
  if (!eval_f(beta).is_zero()) throw DomainError("Frobenius lift did not converge");
  GaloisRingElement power = GaloisRingElement::from_int(frozen, 1);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) ctx->frob_[i][j] = power.coeff(j);
    power *= beta;
  }
  return ctx;
}

std::shared_ptr<const LocalContext> LocalContext::with_precision(int precision) const {
  return make(p_, r_, precision);
}

GaloisRingElement::GaloisRingElement(ContextPtr ctx) : ctx_(std::move(ctx)) {}

GaloisRingElement GaloisRingElement::from_int(ContextPtr ctx, std::int64_t value) {
  GaloisRingElement e(std::move(ctx));
  e.coeffs_[0] = mod_reduce(value, e.ctx_->modulus());
  return e;
}

GaloisRingElement GaloisRingElement::from_coeffs(ContextPtr ctx, const std::vector<std::int64_t>& coeffs) {
  if (static_cast<int>(coeffs.size()) > ctx->r()) {
    throw DomainError("coefficient list longer than the degree r = " + std::to_string(ctx->r()));
  }
  GaloisRingElement e(std::move(ctx));
  for (std::size_t i = 0; i < coeffs.size(); ++i) e.coeffs_[i] = mod_reduce(coeffs[i], e.ctx_->modulus());
  return e;
}

GaloisRingElement GaloisRingElement::generator(ContextPtr ctx) {
  GaloisRingElement e(std::move(ctx));
  if (e.ctx_->r() == 1) {
    // x is the root of x + f_0, i.e. -f_0
    e.coeffs_[0] = mod_reduce(-static_cast<std::int64_t>(e.ctx_->defining_poly()[0]), e.ctx_->modulus());
  } else {
    e.coeffs_[1] = 1;
  }
  return e;
}

std::vector<std::int64_t> GaloisRingElement::coeffs() const {
  return {coeffs_.begin(), coeffs_.begin() + ctx_->r()};
}

GaloisRingElement& GaloisRingElement::operator+=(const GaloisRingElement& o) {
  const std::int64_t m = ctx_->modulus();
  for (int i = 0; i < ctx_->r(); ++i) {
    coeffs_[i] += o.coeffs_[i];
    if (coeffs_[i] >= m) coeffs_[i] -= m;
  }
  return *this;
}

GaloisRingElement& GaloisRingElement::operator-=(const GaloisRingElement& o) {
  const std::int64_t m = ctx_->modulus();
  for (int i = 0; i < ctx_->r(); ++i) {
    coeffs_[i] -= o.coeffs_[i];
    if (coeffs_[i] < 0) coeffs_[i] += m;
  }
  return *this;
}

GaloisRingElement& GaloisRingElement::operator*=(const GaloisRingElement& o) {
  if (ctx_->r() == 1) {
    coeffs_[0] = mod_reduce(static_cast<__int128>(coeffs_[0]) * o.coeffs_[0], ctx_->modulus());
    return *this;
  }
  coeffs_ = poly_mul(*ctx_, coeffs_, o.coeffs_);
  return *this;
}

GaloisRingElement GaloisRingElement::operator-() const {
  GaloisRingElement out(ctx_);
  const std::int64_t m = ctx_->modulus();
  for (int i = 0; i < ctx_->r(); ++i) out.coeffs_[i] = coeffs_[i] == 0 ? 0 : m - coeffs_[i];
  return out;
}

GaloisRingElement GaloisRingElement::scaled(std::int64_t k) const {
  GaloisRingElement out(ctx_);
  const std::int64_t m = ctx_->modulus();
  const std::int64_t kk = mod_reduce(k, m);
  for (int i = 0; i < ctx_->r(); ++i) out.coeffs_[i] = mod_reduce(static_cast<__int128>(coeffs_[i]) * kk, m);
  return out;
}

bool GaloisRingElement::is_zero() const {
  for (int i = 0; i < ctx_->r(); ++i) {
    if (coeffs_[i] != 0) return false;
  }
  return true;
}

bool GaloisRingElement::is_one() const {
  if (coeffs_[0] != 1 % ctx_->modulus()) return false;
  for (int i = 1; i < ctx_->r(); ++i) {
    if (coeffs_[i] != 0) return false;
  }
  return true;
}

bool GaloisRingElement::is_unit() const {
  for (int i = 0; i < ctx_->r(); ++i) {
    if (coeffs_[i] % ctx_->p() != 0) return true;
  }
  return false;
}

bool GaloisRingElement::in_prime_subring() const {
  for (int i = 1; i < ctx_->r(); ++i) {
    if (coeffs_[i] != 0) return false;
  }
  return true;
}

ExtendedInt GaloisRingElement::valuation() const {
  const int v = valuation_capped(ctx_->precision());
  if (v >= ctx_->precision()) return ExtendedInt::infinity();
  return v;
}

int GaloisRingElement::valuation_capped(int cap) const {
  int best = cap;
  const int p = ctx_->p();
  for (int i = 0; i < ctx_->r(); ++i) {
    std::int64_t c = coeffs_[i];
    if (c == 0) continue;
    int v = 0;
    while (v < best && c % p == 0) {
      c /= p;
      ++v;
    }
    if (v < best) best = v;
  }
  return best;
}

GaloisRingElement GaloisRingElement::pow(std::uint64_t e) const {
  GaloisRingElement result = from_int(ctx_, 1);
  GaloisRingElement base = *this;
  while (e > 0) {
    if (e & 1U) result *= base;
    base *= base;
    e >>= 1U;
  }
  return result;
}

GaloisRingElement GaloisRingElement::inverse() const {
  if (!is_unit()) throw DomainError("inverse of a non-unit " + to_string());
  // residue-field inverse u^{q-2}, then x <- x(2 - u x)
  GaloisRingElement x = pow(static_cast<std::uint64_t>(ctx_->q() - 2));
  const GaloisRingElement two = from_int(ctx_, 2);
  for (int iter = 0; iter < 80; ++iter) {
    const GaloisRingElement ux = *this * x;
    if (ux.is_one()) return x;
    x = x * (two - ux);
  }
  throw DomainError("inverse iteration did not converge");
}

GaloisRingElement GaloisRingElement::frobenius() const {
  const int r = ctx_->r();
  if (r == 1) return *this;
  const std::int64_t m = ctx_->modulus();
  const auto& table = ctx_->frobenius_table();
  GaloisRingElement out(ctx_);
  for (int i = 0; i < r; ++i) {
    if (coeffs_[i] == 0) continue;
    for (int j = 0; j < r; ++j) {
      out.coeffs_[j] = mod_reduce(static_cast<__int128>(out.coeffs_[j]) + static_cast<__int128>(coeffs_[i]) * table[i][j], m);
    }
  }
  return out;
}

GaloisRingElement GaloisRingElement::frobenius(int k) const {
  const int r = ctx_->r();
  k %= r;
  if (k < 0) k += r;
  GaloisRingElement out = *this;
  for (int i = 0; i < k; ++i) out = out.frobenius();
  return out;
}

GaloisRingElement GaloisRingElement::truncated(int j) const {
  GaloisRingElement out(ctx_);
  const std::int64_t m = ctx_->pow_p(std::min(j, ctx_->precision()));
  for (int i = 0; i < ctx_->r(); ++i) out.coeffs_[i] = coeffs_[i] % m;
  return out;
}

GaloisRingElement GaloisRingElement::divided_by_p(int j) const {
  GaloisRingElement out(ctx_);
  const std::int64_t d = ctx_->pow_p(j);
  for (int i = 0; i < ctx_->r(); ++i) {
    if (coeffs_[i] % d != 0) throw DomainError("element not divisible by p^" + std::to_string(j));
    out.coeffs_[i] = coeffs_[i] / d;
  }
  return out;
}

GaloisRingElement GaloisRingElement::times_p(int j) const {
  if (j >= ctx_->precision()) return GaloisRingElement(ctx_);
  return scaled(ctx_->pow_p(j));
}

GaloisRingElement GaloisRingElement::in_context(ContextPtr other) const {
  if (other->p() != ctx_->p() || other->r() != ctx_->r()) {
    throw DomainError("context change must keep p and r");
  }
  GaloisRingElement out(std::move(other));
  const std::int64_t m = out.ctx_->modulus();
  for (int i = 0; i < ctx_->r(); ++i) out.coeffs_[i] = coeffs_[i] % m;
  return out;
}

std::string GaloisRingElement::to_string() const {
  std::ostringstream os;
  for (int i = 0; i < ctx_->r(); ++i) {
    if (i) os << ',';
    os << coeffs_[i];
  }
  os << " (mod " << ctx_->p() << '^' << ctx_->precision() << ')';
  return os.str();
}

std::string GaloisRingElement::to_compact_string(bool centered) const {
  const std::int64_t m = ctx_->modulus();
  auto show = [&](std::int64_t c) { return (centered && c > m / 2) ? c - m : c; };
  std::ostringstream os;
  if (ctx_->r() == 1) {
    os << show(coeffs_[0]);
    return os.str();
  }
  os << '(';
  for (int i = 0; i < ctx_->r(); ++i) {
    if (i) os << ',';
    os << show(coeffs_[i]);
  }
  os << ')';
  return os.str();
}

GaloisRingElement ring_norm(const GaloisRingElement& x) {
  GaloisRingElement acc = x;
  GaloisRingElement conj = x;
  for (int i = 1; i < x.context()->r(); ++i) {
    conj = conj.frobenius();
    acc *= conj;
  }
  return acc;
}

}  // namespace gl2lab
