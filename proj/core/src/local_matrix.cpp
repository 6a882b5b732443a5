#include "gl2lab/local_matrix.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "gl2lab/errors.hpp"

namespace gl2lab {

namespace exact {

namespace {
ExactElement padded(const ExactElement& a, std::size_t n) {
  ExactElement out = a;
  out.resize(std::max(out.size(), n), Integer(0));
  return out;
}
}  // namespace

ExactElement add(const ExactElement& a, const ExactElement& b) {
  const std::size_t n = std::max(a.size(), b.size());
  ExactElement out = padded(a, n);
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

ExactElement sub(const ExactElement& a, const ExactElement& b) {
  const std::size_t n = std::max(a.size(), b.size());
  ExactElement out = padded(a, n);
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  return out;
}

ExactElement mul(const LocalContext& ctx, const ExactElement& a, const ExactElement& b) {
  const int r = ctx.r();
  std::vector<Integer> prod(2 * r, Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] += a[i] * b[j];
  }
  // x^r = -sum f_i x^i, reduce from the top
  const auto& f = ctx.defining_poly();
  for (int k = 2 * r - 1; k >= r; --k) {
    if (prod[k] == 0) continue;
    const Integer top = prod[k];
    prod[k] = 0;
    for (int i = 0; i < r; ++i) prod[k - r + i] -= top * f[i];
  }
  prod.resize(r);
  return prod;
}

ExactElement scale(const ExactElement& a, const Integer& k) {
  ExactElement out = a;
  for (auto& c : out) c *= k;
  return out;
}

bool is_zero(const ExactElement& a) {
  return std::all_of(a.begin(), a.end(), [](const Integer& c) { return c == 0; });
}

int valuation(const ExactElement& a, int p) {
  int best = -1;
  for (const auto& c : a) {
    if (c == 0) continue;
    Integer t = c;
    int v = 0;
    while (mpz_divisible_ui_p(t.get_mpz_t(), static_cast<unsigned long>(p))) {
      mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(p));
      ++v;
    }
    if (best < 0 || v < best) best = v;
  }
  return best;
}

GaloisRingElement to_ring(ContextPtr ctx, const ExactElement& a) {
  const Integer m(std::to_string(ctx->modulus()));
  std::vector<std::int64_t> coeffs;
  coeffs.reserve(a.size());
  for (const auto& c : a) {
    Integer red;
    mpz_fdiv_r(red.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    coeffs.push_back(std::stoll(red.get_str()));
  }
  return GaloisRingElement::from_coeffs(std::move(ctx), coeffs);
}

}  // namespace exact

ExtendedInt TruncatedScalar::valuation() const {
  if (exact) {
    if (exact::is_zero(*exact)) return ExtendedInt::infinity();
    return shift + exact::valuation(*exact, value.context()->p());
  }
  const int v = value.valuation_capped(accuracy);
  if (v < accuracy) return shift + v;
  throw PrecisionExhausted("valuation exceeds accessible precision " + std::to_string(accuracy));
}

std::int64_t TruncatedScalar::valuation_capped(std::int64_t cap) const {
  if (exact) {
    const ExtendedInt v = valuation();
    return v.is_infinite() ? cap : std::min<std::int64_t>(v.value(), cap);
  }
  const int v = value.valuation_capped(accuracy);
  if (v < accuracy) return std::min<std::int64_t>(shift + v, cap);
  if (shift + accuracy >= cap) return cap;
  throw PrecisionExhausted("cannot decide valuation >= " + std::to_string(cap) + " at accuracy " +
                           std::to_string(accuracy));
}

LocalMatrix LocalMatrix::from_exact(ContextPtr ctx, const ExactEntries& entries, int exponent) {
  const int r = ctx->r();
  const int p = ctx->p();
  ExactEntries m;
  for (int i = 0; i < 4; ++i) {
    if (static_cast<int>(entries[i].size()) > r) throw DomainError("entry has more than r coefficients");
    m[i] = entries[i];
    m[i].resize(r, Integer(0));
  }
  int shift = -1;
  for (const auto& e : m) {
    if (exact::is_zero(e)) continue;
    const int v = exact::valuation(e, p);
    if (shift < 0 || v < shift) shift = v;
  }
  if (shift < 0) throw DomainError("zero matrix is not invertible");
  if (shift > 0) {
    Integer d;
    mpz_ui_pow_ui(d.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(shift));
    for (auto& e : m) {
      for (auto& c : e) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
    }
  }
  const ExactElement det = exact::sub(exact::mul(*ctx, m[0], m[3]), exact::mul(*ctx, m[1], m[2]));
  if (exact::is_zero(det)) throw DomainError("matrix is singular");

  LocalMatrix g;
  g.ctx_ = ctx;
  g.exponent_ = exponent + shift;
  g.precision_ = ctx->precision();
  for (int i = 0; i < 4; ++i) g.m_[i] = exact::to_ring(ctx, m[i]);
  g.exact_ = std::move(m);
  return g;
}

LocalMatrix LocalMatrix::from_ints(ContextPtr ctx, long long a, long long b, long long c, long long d, int exponent) {
  auto one = [](long long v) { return ExactElement{Integer(std::to_string(v))}; };
  return from_exact(std::move(ctx), {one(a), one(b), one(c), one(d)}, exponent);
}

LocalMatrix LocalMatrix::from_ring(const Entries& entries, int exponent, int precision) {
  LocalMatrix g;
  g.ctx_ = entries[0].context();
  g.exponent_ = exponent;
  g.precision_ = std::min(precision, g.ctx_->precision());
  g.m_ = entries;
  g.normalize_truncated();
  return g;
}

LocalMatrix LocalMatrix::identity(ContextPtr ctx) { return from_ints(std::move(ctx), 1, 0, 0, 1); }

void LocalMatrix::normalize_truncated() {
  for (auto& e : m_) e = e.truncated(precision_);
  int shift = precision_;
  for (const auto& e : m_) shift = std::min(shift, e.valuation_capped(precision_));
  if (shift >= precision_) {
    throw PrecisionExhausted("matrix vanishes modulo p^" + std::to_string(precision_));
  }
  if (shift > 0) {
    for (auto& e : m_) e = e.divided_by_p(shift);
    exponent_ += shift;
    precision_ -= shift;
  }
}

LocalMatrix LocalMatrix::operator*(const LocalMatrix& o) const {
  if (!ctx_->same_ring(*o.ctx_)) throw DomainError("matrices live over different rings");
  if (exact_ && o.exact_) {
    const auto& a = *exact_;
    const auto& b = *o.exact_;
    const LocalContext& c = *ctx_;
    ExactEntries prod = {
        exact::add(exact::mul(c, a[0], b[0]), exact::mul(c, a[1], b[2])),
        exact::add(exact::mul(c, a[0], b[1]), exact::mul(c, a[1], b[3])),
        exact::add(exact::mul(c, a[2], b[0]), exact::mul(c, a[3], b[2])),
        exact::add(exact::mul(c, a[2], b[1]), exact::mul(c, a[3], b[3])),
    };
    return from_exact(ctx_, prod, exponent_ + o.exponent_);
  }
  Entries prod = {
      m_[0] * o.m_[0] + m_[1] * o.m_[2],
      m_[0] * o.m_[1] + m_[1] * o.m_[3],
      m_[2] * o.m_[0] + m_[3] * o.m_[2],
      m_[2] * o.m_[1] + m_[3] * o.m_[3],
  };
  return from_ring(prod, exponent_ + o.exponent_, std::min(precision_, o.precision_));
}

LocalMatrix LocalMatrix::inverse() const {
  const TruncatedScalar det = determinant();
  // v_p(det M); det(g) = p^{2e} det M
  const ExtendedInt vdet = TruncatedScalar{0, det.value, det.accuracy, det.exact}.valuation();
  if (vdet.is_infinite()) throw DomainError("matrix is singular");
  const int v = static_cast<int>(vdet.value());
  if (exact_) {
    // det M = +-p^v keeps the inverse exact: M^{-1} = +-p^{-v} adj(M)
    const ExactElement& d = *det.exact;
    const bool monomial = std::all_of(d.begin() + 1, d.end(), [](const Integer& c) { return c == 0; });
    Integer pv;
    mpz_ui_pow_ui(pv.get_mpz_t(), static_cast<unsigned long>(ctx_->p()), static_cast<unsigned long>(v));
    if (monomial && abs(d[0]) == pv) {
      const Integer sign = d[0] > 0 ? 1 : -1;
      const auto& m = *exact_;
      ExactEntries adj = {exact::scale(m[3], sign), exact::scale(m[1], -sign), exact::scale(m[2], -sign),
                          exact::scale(m[0], sign)};
      return from_exact(ctx_, adj, -exponent_ - v);
    }
  }
  if (v >= precision_) throw PrecisionExhausted("determinant valuation not below precision");
  const GaloisRingElement unit = det.value.truncated(precision_).divided_by_p(v).inverse();
  Entries adj = {m_[3], -m_[1], -m_[2], m_[0]};
  for (auto& e : adj) e = e * unit;
  return from_ring(adj, -exponent_ - v, precision_ - v);
}

LocalMatrix left_quotient(const LocalMatrix& h, const LocalMatrix& g) {
  if (h.is_exact() && g.is_exact()) {
    const LocalMatrix inv = h.inverse();
    if (inv.is_exact()) return inv * g;
  }
  const TruncatedScalar det = h.determinant();
  const ExtendedInt vdet = TruncatedScalar{0, det.value, det.accuracy, det.exact}.valuation();
  if (vdet.is_infinite()) throw DomainError("matrix is singular");
  const int v = static_cast<int>(vdet.value());
  if (v >= h.precision()) throw PrecisionExhausted("determinant valuation not below precision");
  const GaloisRingElement unit = det.value.truncated(h.precision()).divided_by_p(v).inverse();
  const auto& m = h.entries();
  const auto& x = g.entries();
  const LocalMatrix::Entries adj = {m[3], -m[1], -m[2], m[0]};
  const LocalMatrix::Entries prod = {
      adj[0] * x[0] + adj[1] * x[2],
      adj[0] * x[1] + adj[1] * x[3],
      adj[2] * x[0] + adj[3] * x[2],
      adj[2] * x[1] + adj[3] * x[3],
  };
  const LocalMatrix raw =
      LocalMatrix::from_ring(prod, g.exponent() - h.exponent() - v, std::min(h.precision(), g.precision()));
  LocalMatrix::Entries scaled = raw.entries();
  for (auto& e : scaled) e = e * unit;
  return LocalMatrix::from_ring(scaled, raw.exponent(), std::min(raw.precision(), h.precision() - v));
}

LocalMatrix LocalMatrix::frobenius(int k) const {
  if (ctx_->r() == 1) return *this;
  LocalMatrix g = *this;
  for (auto& e : g.m_) e = e.frobenius(k);
  g.exact_.reset();
  return g;
}

LocalMatrix LocalMatrix::times_p(int j) const {
  LocalMatrix g = *this;
  g.exponent_ += j;
  return g;
}

LocalMatrix LocalMatrix::with_precision(int precision) const {
  LocalMatrix g = *this;
  g.precision_ = std::min(precision, precision_);
  for (auto& e : g.m_) e = e.truncated(g.precision_);
  if (g.precision_ < precision_) g.exact_.reset();
  g.normalize_truncated();
  return g;
}

TruncatedScalar LocalMatrix::trace() const {
  TruncatedScalar t{exponent_, (m_[0] + m_[3]).truncated(precision_), precision_, std::nullopt};
  if (exact_) t.exact = exact::add((*exact_)[0], (*exact_)[3]);
  return t;
}

TruncatedScalar LocalMatrix::determinant() const {
  TruncatedScalar d{2 * exponent_, (m_[0] * m_[3] - m_[1] * m_[2]).truncated(precision_), precision_, std::nullopt};
  if (exact_) {
    const auto& a = *exact_;
    d.exact = exact::sub(exact::mul(*ctx_, a[0], a[3]), exact::mul(*ctx_, a[1], a[2]));
  }
  return d;
}

TruncatedScalar LocalMatrix::ell_quantity() const {
  const TruncatedScalar tr = trace();
  const TruncatedScalar det = determinant();
  const int e = exponent_;
  const int big_n = ctx_->precision();
  auto pw = [&](int j) {
    Integer z;
    mpz_ui_pow_ui(z.get_mpz_t(), static_cast<unsigned long>(ctx_->p()), static_cast<unsigned long>(j));
    return z;
  };
  TruncatedScalar out;
  if (e >= 0) {
    const GaloisRingElement one = GaloisRingElement::from_int(ctx_, 1);
    out.shift = 0;
    out.accuracy = std::min(big_n, precision_ + e);
    out.value = (one - tr.value.times_p(e) + det.value.times_p(2 * e)).truncated(out.accuracy);
    if (exact_) {
      out.exact = exact::add(exact::sub(ExactElement{Integer(1)}, exact::scale(*tr.exact, pw(e))),
                             exact::scale(*det.exact, pw(2 * e)));
    }
  } else {
    out.shift = 2 * e;
    out.accuracy = precision_;
    out.value = (GaloisRingElement::from_int(ctx_, 1).times_p(-2 * e) - tr.value.times_p(-e) + det.value)
                    .truncated(out.accuracy);
    if (exact_) {
      out.exact = exact::add(exact::sub(ExactElement{pw(-2 * e)}, exact::scale(*tr.exact, pw(-e))), *det.exact);
    }
  }
  return out;
}

bool LocalMatrix::same_as(const LocalMatrix& o) const {
  if (exponent_ != o.exponent_) return false;
  const int prec = std::min(precision_, o.precision_);
  for (int i = 0; i < 4; ++i) {
    if (!(m_[i].truncated(prec) == o.m_[i].truncated(prec))) return false;
  }
  return true;
}

std::string LocalMatrix::to_string() const {
  std::ostringstream os;
  os << "p^" << exponent_ << " * [[" << m_[0].to_compact_string(true) << ',' << m_[1].to_compact_string(true)
     << "],[" << m_[2].to_compact_string(true) << ',' << m_[3].to_compact_string(true) << "]]";
  return os.str();
}

namespace {

class MatrixParser {
 public:
  explicit MatrixParser(std::string_view text) : s_(text) {}

  LocalMatrix parse(ContextPtr ctx) {
    int exponent = 0;
    skip();
    if (peek() == 'p') {
      ++pos_;
      expect('^');
      exponent = static_cast<int>(integer_token());
      expect('*');
    }
    expect('[');
    LocalMatrix::ExactEntries entries;
    for (int row = 0; row < 2; ++row) {
      if (row) expect(',');
      expect('[');
      entries[2 * row] = entry();
      expect(',');
      entries[2 * row + 1] = entry();
      expect(']');
    }
    expect(']');
    skip();
    if (pos_ != s_.size()) fail("trailing characters");
    return LocalMatrix::from_exact(std::move(ctx), entries, exponent);
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) {
    throw ParseError("matrix parse error at offset " + std::to_string(pos_) + ": " + what);
  }
  long long integer_token() {
    skip();
    const std::size_t start = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == start || (pos_ == start + 1 && !std::isdigit(static_cast<unsigned char>(s_[start])))) {
      fail("expected integer");
    }
    return std::stoll(std::string(s_.substr(start, pos_ - start)));
  }
  ExactElement entry() {
    if (peek() == '(') {
      ++pos_;
      ExactElement coeffs;
      coeffs.emplace_back(std::to_string(integer_token()));
      while (peek() == ',') {
        ++pos_;
        coeffs.emplace_back(std::to_string(integer_token()));
      }
      expect(')');
      return coeffs;
    }
    return ExactElement{Integer(std::to_string(integer_token()))};
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

void require_ell_domain(const LocalMatrix& g) {
  if (g.determinant().valuation_capped(1) < 1) throw DomainError("ell(g) needs v_p(det g) >= 1");
  if (g.trace().valuation_capped(1) != 0) throw DomainError("ell(g) needs v_p(tr g) = 0");
}

}  // namespace

std::pair<GaloisRingElement, int> integral_value(const TruncatedScalar& s) {
  const auto& ctx = s.value.context();
  if (s.shift >= 0) {
    return {s.value.times_p(s.shift), std::min(ctx->precision(), s.accuracy + s.shift)};
  }
  if (s.valuation_capped(0) < 0) throw DomainError("scalar is not integral");
  return {s.value.truncated(s.accuracy).divided_by_p(-s.shift), s.accuracy + s.shift};
}

LocalMatrix parse_local_matrix(ContextPtr ctx, std::string_view text) { return MatrixParser(text).parse(std::move(ctx)); }

int k_of(const LocalMatrix& g) { return -g.exponent(); }

ExtendedNat ell_of(const LocalMatrix& g) {
  require_ell_domain(g);
  return g.ell_quantity().valuation();
}

std::int64_t ell_capped(const LocalMatrix& g, std::int64_t cap) {
  require_ell_domain(g);
  return std::max<std::int64_t>(0, g.ell_quantity().valuation_capped(cap));
}

LocalMatrix norm_map(const LocalMatrix& delta) {
  LocalMatrix acc = delta;
  for (int i = 1; i < delta.context()->r(); ++i) acc = acc * delta.frobenius(i);
  return acc;
}

LocalMatrix sigma_conjugate(const LocalMatrix& h, const LocalMatrix& delta) {
  return h.inverse() * delta * h.frobenius();
}

GaloisRingElement unit_eigenvalue(const LocalMatrix& g, int level) {
  if (level < 1) throw DomainError("level must be >= 1");
  if (g.trace().valuation_capped(1) != 0) throw DomainError("unit eigenvalue needs v_p(tr g) = 0");
  if (g.determinant().valuation_capped(1) < 1) throw DomainError("unit eigenvalue needs v_p(det g) >= 1");
  const auto [tr, acc_tr] = integral_value(g.trace());
  const auto [det, acc_det] = integral_value(g.determinant());
  const int acc = std::min(acc_tr, acc_det);
  if (level > acc) {
    throw PrecisionExhausted("unit eigenvalue mod p^" + std::to_string(level) + " needs more precision");
  }
  // a = tr - det / a contracts p-adically towards the unit root
  GaloisRingElement a = tr;
  for (int i = 0; i <= acc + 1; ++i) a = tr - det * a.inverse();
  const auto target = g.context()->with_precision(level);
  return a.truncated(level).in_context(target);
}

}  // namespace gl2lab
