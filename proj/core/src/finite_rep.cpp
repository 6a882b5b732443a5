#include "gl2lab/finite_rep.hpp"

#include "gl2lab/errors.hpp"

namespace gl2lab {

ClassFunction::ClassFunction(FiniteGL2Ptr group, CyclotomicFieldPtr field)
    : group_(std::move(group)), field_(std::move(field)) {
  values_.assign(group_->num_classes(), CyclotomicValue(field_));
}

ClassFunction::ClassFunction(FiniteGL2Ptr group, CyclotomicFieldPtr field, std::vector<CyclotomicValue> values)
    : group_(std::move(group)), field_(std::move(field)), values_(std::move(values)) {
  if (static_cast<int>(values_.size()) != group_->num_classes()) {
    throw DomainError("class function needs one value per conjugacy class");
  }
}

CyclotomicValue ClassFunction::degree() const { return (*this)(group_->identity()); }

ClassFunction& ClassFunction::operator+=(const ClassFunction& o) {
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
  return *this;
}

ClassFunction& ClassFunction::operator-=(const ClassFunction& o) {
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
  return *this;
}

ClassFunction& ClassFunction::operator*=(const CyclotomicValue& k) {
  for (auto& v : values_) v *= k;
  return *this;
}

CyclotomicValue inner_product(const ClassFunction& f1, const ClassFunction& f2) {
  const auto& g = *f1.group();
  CyclotomicValue acc(f1.field());
  for (int c = 0; c < g.num_classes(); ++c) {
    acc += f1.at_class(c) * f2.at_class(c).conj() * rational_of(g.class_sizes()[c]);
  }
  return acc * Rational(Rational(1) / rational_of(g.order()));
}

CyclotomicValue hecke_trace(const ClassFunction& h, const ClassFunction& chi) {
  const auto& g = *h.group();
  CyclotomicValue acc(h.field());
  for (int c = 0; c < g.num_classes(); ++c) {
    acc += h.at_class(c) * chi.at_class(c) * rational_of(g.class_sizes()[c]);
  }
  return acc * Rational(Rational(1) / rational_of(g.order()));
}

ClassFunction identity_idempotent(FiniteGL2Ptr group, CyclotomicFieldPtr field) {
  ClassFunction e(group, field);
  e.set(group->class_of(group->identity()), CyclotomicValue(field, rational_of(group->order())));
  return e;
}

namespace {

std::array<int, 2> row_times(const FiniteGL2& g, int v1, int v2, MatCode m) {
  const auto a = g.entries(m);
  const FiniteRing& k = g.ring();
  return {k.add(k.mul(v1, a[0]), k.mul(v2, a[2])), k.add(k.mul(v1, a[1]), k.mul(v2, a[3]))};
}

}  // namespace

PrincipalSeries::PrincipalSeries(int p, int n)
    : p_(p),
      n_(n),
      group_(FiniteGL2::make(p, 1, n)),
      chars_(p, n),
      field_(CyclotomicField::make(chars_.order())),
      trivial_(group_, field_),
      steinberg_(group_, field_),
      drinfeld_(group_, field_) {
  for (int c = 0; c < group_->num_classes(); ++c) trivial_.set(c, CyclotomicValue(field_, Rational(1)));
  induced_.reserve(chars_.count());
  for (int k = 0; k < chars_.count(); ++k) induced_.push_back(induced_character(*this, k));
  steinberg_ = induced_[UnitCharacters::kTrivial] - trivial_;
  for (int c = 0; c < group_->num_classes(); ++c) {
    drinfeld_.set(c, CyclotomicValue(field_, rational_of(twisted_fixed_surjections(group_->class_reps()[c], 1))));
  }
}

CyclotomicValue PrincipalSeries::chi(int k, int u) const {
  return CyclotomicValue::zeta_power(field_, chars_.exponent(k, u));
}

long long PrincipalSeries::twisted_fixed_surjections(MatCode g, int a) const {
  const FiniteRing& k = group_->ring();
  const int R = k.size();
  long long count = 0;
  for (int v1 = 0; v1 < R; ++v1) {
    for (int v2 = 0; v2 < R; ++v2) {
      if (!k.is_unit(v1) && !k.is_unit(v2)) continue;
      const auto w = row_times(*group_, v1, v2, g);
      if (w[0] == k.mul(a, v1) && w[1] == k.mul(a, v2)) ++count;
    }
  }
  return count;
}

long long PrincipalSeries::fixed_lines(MatCode g) const {
  const FiniteRing& k = group_->ring();
  const int R = k.size();
  long long count = 0;
  for (int v1 = 0; v1 < R; ++v1) {
    for (int v2 = 0; v2 < R; ++v2) {
      if (!k.is_unit(v1) && !k.is_unit(v2)) continue;
      const auto w = row_times(*group_, v1, v2, g);
      const int lambda = k.is_unit(v1) ? k.mul(w[0], k.inv(v1)) : k.mul(w[1], k.inv(v2));
      if (w[0] == k.mul(lambda, v1) && w[1] == k.mul(lambda, v2)) ++count;
    }
  }
  return count / chars_.order();
}

ClassFunction induced_character(const PrincipalSeries& ps, int chi_index) {
  const FiniteGL2& g = *ps.group();
  const auto& chars = ps.unit_characters();
  const long long borel = static_cast<long long>(chars.order()) * chars.order() * chars.modulus();
  ClassFunction out(ps.group(), ps.field());
  for (int c = 0; c < g.num_classes(); ++c) {
    const MatCode rep = g.class_reps()[c];
    std::vector<long long> hist(chars.modulus(), 0);
    for (MatCode x : g.elements()) {
      const auto y = g.entries(g.mul(g.inv(x), g.mul(rep, x)));
      if (y[2] == 0) ++hist[y[3]];
    }
    CyclotomicValue v(ps.field());
    for (int d : chars.units()) {
      if (hist[d] != 0) v += ps.chi(chi_index, d) * rational_of(hist[d]);
    }
    out.set(c, v * Rational(Rational(1) / rational_of(borel)));
  }
  return out;
}

namespace {

int unit_residue(const PointKind& kind, const PrincipalSeries& ps) {
  const long long m = ps.unit_characters().modulus();
  const int a = static_cast<int>(((kind.unit_root % m) + m) % m);
  if (a % ps.p() == 0) throw DomainError("ordinary point needs a unit eigenvalue");
  return a;
}

Rational p_power(int p, int r) {
  Rational out = 1;
  for (int i = 0; i < r; ++i) out *= p;
  return out;
}

}  // namespace

CyclotomicValue ss_trace_point(const PointKind& kind, const ClassFunction& h, const PrincipalSeries& ps, int r) {
  if (kind.supersingular) {
    return hecke_trace(h, ps.trivial()) - hecke_trace(h, ps.steinberg()) * p_power(ps.p(), r);
  }
  const int a = unit_residue(kind, ps);
  CyclotomicValue acc(ps.field());
  for (int k = 0; k < ps.unit_characters().count(); ++k) {
    acc += hecke_trace(h, ps.induced(k)) * ps.chi(k, a).conj();
  }
  return acc;
}

CyclotomicValue ss_trace_point_by_counting(const PointKind& kind, const ClassFunction& h, const PrincipalSeries& ps,
                                           int r) {
  const FiniteGL2& g = *ps.group();
  CyclotomicValue acc(ps.field());
  if (kind.supersingular) {
    // tr(h | 1) - p^r (tr(h | P^1) - tr(h | 1))
    for (int c = 0; c < g.num_classes(); ++c) {
      const Rational lines = rational_of(ps.fixed_lines(g.class_reps()[c]));
      const Rational weight = Rational(1) - p_power(ps.p(), r) * (lines - 1);
      acc += h.at_class(c) * (weight * rational_of(g.class_sizes()[c]));
    }
  } else {
    const int a = unit_residue(kind, ps);
    for (int c = 0; c < g.num_classes(); ++c) {
      const Rational fixed = rational_of(ps.twisted_fixed_surjections(g.class_reps()[c], a));
      acc += h.at_class(c) * (fixed * rational_of(g.class_sizes()[c]));
    }
  }
  return acc * Rational(Rational(1) / rational_of(g.order()));
}

}  // namespace gl2lab
