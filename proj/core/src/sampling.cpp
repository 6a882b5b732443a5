#include "gl2lab/sampling.hpp"

#include "gl2lab/errors.hpp"

namespace gl2lab {

namespace {

Integer ppow(const LocalContext& ctx, int j) { return ipow(integer_of(ctx.p()), static_cast<unsigned long>(j)); }

ExactElement constant(const Integer& c) { return ExactElement{c}; }

long long uniform(Rng& rng, long long lo, long long hi) { return std::uniform_int_distribution<long long>(lo, hi)(rng); }

}  // namespace

ExactElement random_exact_element(const LocalContext& ctx, Rng& rng, long long bound) {
  ExactElement e(ctx.r());
  for (auto& c : e) c = integer_of(uniform(rng, 0, bound - 1));
  return e;
}

ExactElement random_exact_unit(const LocalContext& ctx, Rng& rng, long long bound) {
  for (;;) {
    ExactElement e = random_exact_element(ctx, rng, bound);
    for (const auto& c : e) {
      if (mpz_divisible_ui_p(c.get_mpz_t(), static_cast<unsigned long>(ctx.p())) == 0) return e;
    }
  }
}

LocalMatrix random_sl2(const ContextPtr& ctx, Rng& rng, int factors) {
  const long long bound = ctx->p() * ctx->p();
  LocalMatrix acc = LocalMatrix::identity(ctx);
  for (int i = 0; i < factors; ++i) {
    const ExactElement x = random_exact_element(*ctx, rng, bound);
    LocalMatrix::ExactEntries e = (i % 2 == 0) ? LocalMatrix::ExactEntries{constant(1), x, constant(0), constant(1)}
                                               : LocalMatrix::ExactEntries{constant(1), constant(0), x, constant(1)};
    acc = acc * LocalMatrix::from_exact(ctx, e);
  }
  return acc;
}

LocalMatrix random_gl2_integral(const ContextPtr& ctx, Rng& rng) {
  const ExactElement u = random_exact_unit(*ctx, rng, ctx->p() * ctx->p());
  return random_sl2(ctx, rng) * LocalMatrix::from_exact(ctx, {u, constant(0), constant(0), constant(1)});
}

LocalMatrix random_conjugator(const ContextPtr& ctx, Rng& rng, int max_s) {
  const int s = static_cast<int>(uniform(rng, 0, max_s));
  const ExactElement x = random_exact_element(*ctx, rng, ctx->p() * ctx->p());
  return random_sl2(ctx, rng) * LocalMatrix::from_exact(ctx, {constant(ppow(*ctx, s)), x, constant(0), constant(1)});
}

LocalMatrix random_probe(const ContextPtr& ctx, Rng& rng, ProbeKind kind, int depth) {
  const LocalContext& c = *ctx;
  const long long bound = c.p() * c.p();
  const Integer p = integer_of(c.p());
  LocalMatrix::ExactEntries x;
  switch (kind) {
    case ProbeKind::TraceNonUnit: {
      const ExactElement u = random_exact_unit(c, rng, bound);
      const ExactElement t = random_exact_element(c, rng, bound);
      x = {constant(0), exact::scale(u, -p), constant(1), exact::scale(t, p)};
      break;
    }
    case ProbeKind::EllFinite: {
      const ExactElement u = random_exact_unit(c, rng, bound);
      const int j = static_cast<int>(uniform(rng, 0, depth));
      ExactElement t2;
      if (j == 0 && c.q() > 2) {
        // a unit not congruent to 1 mod p
        for (;;) {
          t2 = random_exact_unit(c, rng, bound);
          const ExactElement diff = exact::sub(t2, constant(1));
          if (!exact::is_zero(diff) && exact::valuation(diff, c.p()) == 0) break;
        }
      } else {
        const int jj = std::max(j, 1);
        t2 = exact::add(constant(1), exact::scale(random_exact_unit(c, rng, bound), ppow(c, jj)));
      }
      x = {exact::scale(u, p), constant(0), constant(0), t2};
      break;
    }
    case ProbeKind::EllInfinite: {
      const ExactElement u = random_exact_unit(c, rng, bound);
      x = {exact::scale(u, p), constant(0), constant(0), constant(1)};
      break;
    }
    case ProbeKind::Iwasawa: {
      const int a = static_cast<int>(uniform(rng, -depth, depth + 1));
      const ExactElement u1 = random_exact_unit(c, rng, bound);
      const ExactElement u2 = random_exact_unit(c, rng, bound);
      // scale by p^depth so all entries are integral, then undo in the exponent
      const int lift = depth + 1;
      const ExactElement cc = random_exact_element(c, rng, ipow(p, static_cast<unsigned long>(depth + 1)).get_si());
      x = {exact::scale(u1, ppow(c, a + lift)), cc, constant(0), exact::scale(u2, ppow(c, 1 - a + lift))};
      return random_gl2_integral(ctx, rng) * LocalMatrix::from_exact(ctx, x, -lift);
    }
    case ProbeKind::OffSupport: {
      const int v = uniform(rng, 0, 1) == 0 ? 0 : 2;
      const ExactElement u = random_exact_unit(c, rng, bound);
      x = {exact::scale(u, ppow(c, v)), constant(1), constant(0), constant(1)};
      if (v == 2) x[1] = constant(0);
      break;
    }
  }
  const LocalMatrix core = LocalMatrix::from_exact(ctx, x);
  const LocalMatrix h = random_conjugator(ctx, rng, depth);
  return h.inverse() * core * h;
}

LocalMatrix branch_covering_probe(const ContextPtr& ctx, Rng& rng, int index, int n) {
  static constexpr ProbeKind kinds[] = {ProbeKind::TraceNonUnit, ProbeKind::EllFinite, ProbeKind::EllInfinite,
                                        ProbeKind::Iwasawa, ProbeKind::EllFinite, ProbeKind::OffSupport};
  return random_probe(ctx, rng, kinds[index % 6], n);
}

}  // namespace gl2lab
