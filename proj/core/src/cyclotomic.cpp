#include "gl2lab/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "gl2lab/errors.hpp"

namespace gl2lab {

namespace {

// Exact division of integer polynomials by a monic divisor.
std::vector<long long> divide_monic(std::vector<long long> a, const std::vector<long long>& b) {
  const std::size_t db = b.size() - 1;
  std::vector<long long> quot(a.size() - db, 0);
  for (std::size_t k = a.size(); k-- > db;) {
    const long long lead = a[k];
    quot[k - db] = lead;
    for (std::size_t i = 0; i <= db; ++i) a[k - db + i] -= lead * b[i];
  }
  for (std::size_t i = 0; i < db; ++i) {
    if (a[i] != 0) throw DomainError("cyclotomic division left a remainder");
  }
  return quot;
}

}  // namespace

std::vector<long long> cyclotomic_polynomial(int order) {
  if (order < 1) throw DomainError("cyclotomic order must be positive");
  static std::mutex mu;
  static std::map<int, std::vector<long long>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(order);
    if (it != cache.end()) return it->second;
  }
  std::vector<long long> poly(order + 1, 0);
  poly[0] = -1;
  poly[order] = 1;
  for (int d = 1; d < order; ++d) {
    if (order % d == 0) poly = divide_monic(poly, cyclotomic_polynomial(d));
  }
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(order, poly);
  return poly;
}

std::shared_ptr<const CyclotomicField> CyclotomicField::make(int order) {
  auto f = std::shared_ptr<CyclotomicField>(new CyclotomicField());
  f->order_ = order;
  f->phi_ = cyclotomic_polynomial(order);
  const int deg = f->degree();
  std::vector<Rational> cur(deg, Rational(0));
  cur[0] = 1;
  f->powers_.reserve(order);
  for (int k = 0; k < order; ++k) {
    f->powers_.push_back(cur);
    // multiply by x and reduce by Phi_M
    std::vector<Rational> next(deg, Rational(0));
    const Rational top = cur[deg - 1];
    for (int i = deg - 1; i > 0; --i) next[i] = cur[i - 1];
    next[0] = 0;
    for (int i = 0; i < deg; ++i) next[i] -= top * rational_of(f->phi_[i]);
    cur = std::move(next);
  }
  return f;
}

const std::vector<Rational>& CyclotomicField::zeta_power(int k) const {
  int e = k % order_;
  if (e < 0) e += order_;
  return powers_[e];
}

CyclotomicValue::CyclotomicValue(CyclotomicFieldPtr field)
    : field_(std::move(field)), c_(field_->degree(), Rational(0)) {}

CyclotomicValue::CyclotomicValue(CyclotomicFieldPtr field, const Rational& value) : CyclotomicValue(std::move(field)) {
  c_[0] = value;
}

CyclotomicValue CyclotomicValue::zeta_power(CyclotomicFieldPtr field, int k) {
  CyclotomicValue v(field);
  v.c_ = field->zeta_power(k);
  return v;
}

CyclotomicValue& CyclotomicValue::operator+=(const CyclotomicValue& o) {
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

CyclotomicValue& CyclotomicValue::operator-=(const CyclotomicValue& o) {
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

CyclotomicValue& CyclotomicValue::operator*=(const Rational& k) {
  for (auto& c : c_) c *= k;
  return *this;
}

CyclotomicValue& CyclotomicValue::operator*=(const CyclotomicValue& o) {
  const int deg = field_->degree();
  std::vector<Rational> prod(2 * deg, Rational(0));
  for (int i = 0; i < deg; ++i) {
    if (c_[i] == 0) continue;
    for (int j = 0; j < deg; ++j) prod[i + j] += c_[i] * o.c_[j];
  }
  const auto& phi = field_->cyclotomic_poly();
  for (int k = 2 * deg - 1; k >= deg; --k) {
    if (prod[k] == 0) continue;
    const Rational top = prod[k];
    prod[k] = 0;
    for (int i = 0; i < deg; ++i) prod[k - deg + i] -= top * rational_of(phi[i]);
  }
  prod.resize(deg);
  c_ = std::move(prod);
  return *this;
}

bool operator==(const CyclotomicValue& a, const CyclotomicValue& b) { return a.c_ == b.c_; }

CyclotomicValue CyclotomicValue::conj() const {
  CyclotomicValue out(field_);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    const auto& z = field_->zeta_power(-static_cast<int>(i));
    for (std::size_t j = 0; j < c_.size(); ++j) out.c_[j] += c_[i] * z[j];
  }
  return out;
}

bool CyclotomicValue::is_rational() const {
  for (std::size_t i = 1; i < c_.size(); ++i) {
    if (c_[i] != 0) return false;
  }
  return true;
}

Rational CyclotomicValue::to_rational() const {
  if (!is_rational()) throw DomainError("cyclotomic value is not rational: " + to_string());
  return c_.empty() ? Rational(0) : c_[0];
}

std::string CyclotomicValue::to_string() const {
  if (is_rational()) return to_rational().get_str();
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << c_[i].get_str();
    if (i > 0) os << "*z" << (i > 1 ? "^" + std::to_string(i) : "");
  }
  return os.str();
}

}  // namespace gl2lab
