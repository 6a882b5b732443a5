#include "gl2lab/finite_group.hpp"

#include <deque>
#include <numeric>

#include "gl2lab/errors.hpp"

namespace gl2lab {

namespace {
constexpr int kMaxRingSize = 256;
}

std::shared_ptr<const FiniteRing> FiniteRing::make(int p, int r, int n) {
  auto ring = std::shared_ptr<FiniteRing>(new FiniteRing());
  ring->ctx_ = LocalContext::make(p, r, n);
  long long size = 1;
  for (int i = 0; i < r; ++i) {
    size *= ring->ctx_->modulus();
    if (size > kMaxRingSize) {
      throw ResourceLimit("ring GR(" + std::to_string(p) + "^" + std::to_string(n) + ", " + std::to_string(r) +
                          ") is too large for table arithmetic");
    }
  }
  const int R = static_cast<int>(size);
  ring->size_ = R;
  std::vector<GaloisRingElement> elems;
  elems.reserve(R);
  for (int c = 0; c < R; ++c) elems.push_back(ring->element(c));
  ring->add_.resize(R * R);
  ring->mul_.resize(R * R);
  ring->neg_.resize(R);
  ring->frob_.resize(R);
  ring->inv_.assign(R, -1);
  for (int a = 0; a < R; ++a) {
    ring->neg_[a] = ring->code_of(-elems[a]);
    ring->frob_[a] = ring->code_of(elems[a].frobenius());
    if (elems[a].is_unit()) ring->inv_[a] = ring->code_of(elems[a].inverse());
    for (int b = 0; b < R; ++b) {
      ring->add_[a * R + b] = ring->code_of(elems[a] + elems[b]);
      ring->mul_[a * R + b] = ring->code_of(elems[a] * elems[b]);
    }
  }
  return ring;
}

int FiniteRing::from_int(long long v) const {
  const long long m = ctx_->modulus();
  return static_cast<int>(((v % m) + m) % m);
}

int FiniteRing::code_of(const GaloisRingElement& x) const {
  const std::int64_t m = ctx_->modulus();
  int code = 0;
  for (int i = r() - 1; i >= 0; --i) code = static_cast<int>(code * m + x.coeff(i));
  return code;
}

GaloisRingElement FiniteRing::element(int code) const {
  const std::int64_t m = ctx_->modulus();
  std::vector<std::int64_t> c(r());
  for (auto& x : c) {
    x = code % m;
    code = static_cast<int>(code / m);
  }
  return GaloisRingElement::from_coeffs(ctx_, c);
}

std::vector<int> FiniteRing::power_basis() const {
  std::vector<int> out;
  int code = 1;
  for (int i = 0; i < r(); ++i) {
    out.push_back(code);
    code *= static_cast<int>(ctx_->modulus());
  }
  return out;
}

int FiniteRing::prime_value(int a) const { return a < ctx_->modulus() ? a : -1; }

int FiniteRing::reduce(int a, int j) const {
  const std::int64_t m = ctx_->modulus();
  const std::int64_t mj = ctx_->pow_p(j);
  int out = 0;
  int place = 1;
  for (int i = 0; i < r(); ++i) {
    out += static_cast<int>((a % m) % mj) * place;
    a = static_cast<int>(a / m);
    place *= static_cast<int>(mj);
  }
  return out;
}

long long gl2_order(int p, int r, int n) {
  long long q = 1;
  for (int i = 0; i < r; ++i) q *= p;
  long long out = (q * q - 1) * (q * q - q);
  for (int i = 0; i < 4 * (n - 1); ++i) out *= q;
  return out;
}

std::array<int, 4> FiniteGL2::entries(MatCode x) const {
  const std::uint32_t R = static_cast<std::uint32_t>(ring_->size());
  std::array<int, 4> e{};
  for (int i = 3; i >= 0; --i) {
    e[i] = static_cast<int>(x % R);
    x /= R;
  }
  return e;
}

MatCode FiniteGL2::mul(MatCode x, MatCode y) const {
  const auto a = entries(x);
  const auto b = entries(y);
  const FiniteRing& k = *ring_;
  return make(k.add(k.mul(a[0], b[0]), k.mul(a[1], b[2])), k.add(k.mul(a[0], b[1]), k.mul(a[1], b[3])),
              k.add(k.mul(a[2], b[0]), k.mul(a[3], b[2])), k.add(k.mul(a[2], b[1]), k.mul(a[3], b[3])));
}

int FiniteGL2::det(MatCode x) const {
  const auto a = entries(x);
  return ring_->sub(ring_->mul(a[0], a[3]), ring_->mul(a[1], a[2]));
}

int FiniteGL2::trace(MatCode x) const {
  const auto a = entries(x);
  return ring_->add(a[0], a[3]);
}

MatCode FiniteGL2::inv(MatCode x) const {
  const auto a = entries(x);
  const FiniteRing& k = *ring_;
  const int di = k.inv(det(x));
  if (di < 0) throw DomainError("matrix is not invertible");
  return make(k.mul(a[3], di), k.mul(k.neg(a[1]), di), k.mul(k.neg(a[2]), di), k.mul(a[0], di));
}

MatCode FiniteGL2::frob(MatCode x) const {
  const auto a = entries(x);
  return make(ring_->frob(a[0]), ring_->frob(a[1]), ring_->frob(a[2]), ring_->frob(a[3]));
}

std::shared_ptr<const FiniteGL2> FiniteGL2::make(FiniteRingPtr ring) {
  auto g = std::shared_ptr<FiniteGL2>(new FiniteGL2());
  g->ring_ = std::move(ring);
  const FiniteRing& k = *g->ring_;
  const long long R = k.size();
  check_resource(R * R * R * R, "GL2 code space");
  g->code_space_ = static_cast<std::uint32_t>(R * R * R * R);
  g->class_of_.assign(g->code_space_, -2);
  for (MatCode x = 0; x < g->code_space_; ++x) {
    if (k.is_unit(g->det(x))) {
      g->class_of_[x] = -1;
      g->elements_.push_back(x);
    }
  }

  // generators
  for (int b : k.power_basis()) {
    g->gens_.push_back(g->make(1, b, 0, 1));
    g->gens_.push_back(g->make(1, 0, b, 1));
  }
  std::vector<char> in_sub(R, 0);
  in_sub[1] = 1;
  std::vector<int> unit_gens;
  for (int u = 0; u < R; ++u) {
    if (!k.is_unit(u) || in_sub[u]) continue;
    unit_gens.push_back(u);
    std::deque<int> queue;
    for (int v = 0; v < R; ++v) {
      if (in_sub[v]) queue.push_back(v);
    }
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      for (int w : unit_gens) {
        const int y = k.mul(v, w);
        if (!in_sub[y]) {
          in_sub[y] = 1;
          queue.push_back(y);
        }
      }
    }
  }
  for (int u : unit_gens) g->gens_.push_back(g->make(u, 0, 0, 1));
  g->gens_.push_back(g->make(0, 1, 1, 0));

  std::vector<std::pair<MatCode, MatCode>> conj;
  for (MatCode s : g->gens_) conj.emplace_back(g->inv(s), s);
  for (MatCode x : g->elements_) {
    if (g->class_of_[x] != -1) continue;
    const int id = static_cast<int>(g->class_reps_.size());
    g->class_reps_.push_back(x);
    long long size = 0;
    std::deque<MatCode> queue{x};
    g->class_of_[x] = id;
    while (!queue.empty()) {
      const MatCode y = queue.front();
      queue.pop_front();
      ++size;
      for (const auto& [si, s] : conj) {
        const MatCode z = g->mul(si, g->mul(y, s));
        if (g->class_of_[z] == -1) {
          g->class_of_[z] = id;
          queue.push_back(z);
        }
      }
    }
    g->class_sizes_.push_back(size);
  }
  return g;
}

UnitCharacters::UnitCharacters(int p, int n) {
  if (!is_prime(p) || n < 1) throw DomainError("unit characters need a prime p and n >= 1");
  modulus_ = 1;
  for (int i = 0; i < n; ++i) modulus_ *= p;
  for (int u = 0; u < modulus_; ++u) {
    if (u % p != 0) units_.push_back(u);
  }
  order_ = static_cast<int>(units_.size());
  auto mult_order = [&](int u) {
    int k = 1;
    long long x = u % modulus_;
    while (x != 1 % modulus_) {
      x = x * u % modulus_;
      ++k;
    }
    return k;
  };
  if (p == 2 && n >= 3) {
    gens_ = {modulus_ - 1, 5};
    gen_orders_ = {2, order_ / 2};
  } else {
    for (int u : units_) {
      if (mult_order(u) == order_) {
        gens_ = {u};
        gen_orders_ = {order_};
        break;
      }
    }
  }
  // discrete logs by enumerating products of generator powers
  std::vector<std::vector<int>> dlog(modulus_);
  const int g0 = gen_orders_[0];
  const int g1 = gen_orders_.size() > 1 ? gen_orders_[1] : 1;
  long long x0 = 1 % modulus_;
  for (int e0 = 0; e0 < g0; ++e0) {
    long long x = x0;
    for (int e1 = 0; e1 < g1; ++e1) {
      dlog[x] = {e0, e1};
      if (gens_.size() > 1) x = x * gens_[1] % modulus_;
    }
    x0 = x0 * gens_[0] % modulus_;
  }
  exps_.assign(order_, std::vector<int>(modulus_, 0));
  for (int k = 0; k < order_; ++k) {
    const int j0 = k % g0;
    const int j1 = k / g0;
    for (int u : units_) {
      const long long e = static_cast<long long>(j0) * dlog[u][0] * (order_ / g0) +
                          static_cast<long long>(j1) * dlog[u][1] * (order_ / g1);
      exps_[k][u] = static_cast<int>(e % order_);
    }
  }
}

}  // namespace gl2lab
