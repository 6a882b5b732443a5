#include "gl2lab/rational_function.hpp"

#include <algorithm>
#include <sstream>

#include "gl2lab/errors.hpp"

namespace gl2lab {

void poly_trim(PolyQ& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

PolyQ poly_add(const PolyQ& a, const PolyQ& b) {
  PolyQ out(std::max(a.size(), b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  poly_trim(out);
  return out;
}

PolyQ poly_sub(const PolyQ& a, const PolyQ& b) {
  PolyQ out(std::max(a.size(), b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  poly_trim(out);
  return out;
}

PolyQ poly_mul(const PolyQ& a, const PolyQ& b) {
  if (a.empty() || b.empty()) return {};
  PolyQ out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  poly_trim(out);
  return out;
}

Rational poly_eval(const PolyQ& a, const Rational& t) {
  Rational acc = 0;
  for (std::size_t i = a.size(); i-- > 0;) acc = acc * t + a[i];
  return acc;
}

namespace {

PolyQ denominator_power(long long q, int e) {
  PolyQ base = {rational_of(q), Rational(0), Rational(-1)};
  PolyQ out = {Rational(1)};
  for (int i = 0; i < e; ++i) out = poly_mul(out, base);
  return out;
}

// Divides by (q - t^2) when exact.
bool divide_by_denominator(const PolyQ& a, long long q, PolyQ& quot) {
  if (a.size() < 3) return a.empty();
  PolyQ rem = a;
  quot.assign(a.size() - 2, Rational(0));
  for (std::size_t k = rem.size(); k-- > 2;) {
    // leading coefficient of (q - t^2) is -1
    const Rational c = -rem[k];
    quot[k - 2] = c;
    rem[k] = 0;
    rem[k - 2] -= c * rational_of(q);
  }
  return rem[0] == 0 && rem[1] == 0;
}

}  // namespace

RationalFunctionT::RationalFunctionT(long long q, PolyQ numerator, int den_exp)
    : q_(q), num_(std::move(numerator)), den_exp_(den_exp) {
  if (den_exp < 0) throw DomainError("negative denominator exponent");
  canonicalize();
}

RationalFunctionT RationalFunctionT::constant(long long q, const Rational& c) { return RationalFunctionT(q, {c}); }

RationalFunctionT RationalFunctionT::monomial(long long q, const Rational& c, int k) {
  PolyQ p(k + 1, Rational(0));
  p[k] = c;
  return RationalFunctionT(q, p);
}

void RationalFunctionT::canonicalize() {
  poly_trim(num_);
  if (num_.empty()) {
    den_exp_ = 0;
    return;
  }
  PolyQ quot;
  while (den_exp_ > 0 && divide_by_denominator(num_, q_, quot)) {
    num_ = quot;
    poly_trim(num_);
    --den_exp_;
  }
}

RationalFunctionT& RationalFunctionT::operator+=(const RationalFunctionT& o) {
  if (q_ == 0) q_ = o.q_;
  const int e = std::max(den_exp_, o.den_exp_);
  num_ = poly_add(poly_mul(num_, denominator_power(q_, e - den_exp_)),
                  poly_mul(o.num_, denominator_power(q_, e - o.den_exp_)));
  den_exp_ = e;
  canonicalize();
  return *this;
}

RationalFunctionT& RationalFunctionT::operator-=(const RationalFunctionT& o) {
  RationalFunctionT neg = o;
  neg *= Rational(-1);
  return *this += neg;
}

RationalFunctionT& RationalFunctionT::operator*=(const RationalFunctionT& o) {
  if (q_ == 0) q_ = o.q_;
  num_ = poly_mul(num_, o.num_);
  den_exp_ += o.den_exp_;
  canonicalize();
  return *this;
}

RationalFunctionT& RationalFunctionT::operator*=(const Rational& k) {
  for (auto& c : num_) c *= k;
  canonicalize();
  return *this;
}

bool operator==(const RationalFunctionT& a, const RationalFunctionT& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  const long long q = a.q_ != 0 ? a.q_ : b.q_;
  const int e = std::max(a.den_exp_, b.den_exp_);
  return poly_mul(a.num_, denominator_power(q, e - a.den_exp_)) ==
         poly_mul(b.num_, denominator_power(q, e - b.den_exp_));
}

Rational RationalFunctionT::evaluate(const Rational& t) const {
  const Rational num = poly_eval(num_, t);
  if (den_exp_ == 0) return num;
  const Rational den = rational_of(q_) - t * t;
  if (den == 0) throw DomainError("rational function has a pole at t = " + t.get_str());
  Rational d = 1;
  for (int i = 0; i < den_exp_; ++i) d *= den;
  return num / d;
}

std::string RationalFunctionT::to_string() const {
  std::ostringstream os;
  if (num_.empty()) return "0";
  bool first = true;
  std::ostringstream poly;
  for (std::size_t i = 0; i < num_.size(); ++i) {
    if (num_[i] == 0) continue;
    const bool neg = num_[i] < 0;
    const Rational mag = neg ? Rational(-num_[i]) : num_[i];
    if (first) {
      if (neg) poly << '-';
    } else {
      poly << (neg ? " - " : " + ");
    }
    first = false;
    if (i == 0 || mag != 1) poly << mag.get_str();
    if (i > 0) {
      if (mag != 1) poly << '*';
      poly << 't';
      if (i > 1) poly << '^' << i;
    }
  }
  if (den_exp_ == 0) return poly.str();
  os << '(' << poly.str() << ")/(" << q_ << " - t^2)";
  if (den_exp_ > 1) os << '^' << den_exp_;
  return os.str();
}

}  // namespace gl2lab
