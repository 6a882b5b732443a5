#pragma once

#include <random>

#include "gl2lab/local_matrix.hpp"

namespace gl2lab {

/// Seeded generator used by every sampled check.
using Rng = std::mt19937_64;

/// Exact element of Z_q with coefficients in [0, bound).
ExactElement random_exact_element(const LocalContext& ctx, Rng& rng, long long bound);
/// Exact unit of Z_q with coefficients in [0, bound).
ExactElement random_exact_unit(const LocalContext& ctx, Rng& rng, long long bound);
/// Exact element of SL2(Z_q) as a product of `factors` elementary matrices.
LocalMatrix random_sl2(const ContextPtr& ctx, Rng& rng, int factors = 4);
/// Exact element of GL2(Z_q): random_sl2 times diag(u, 1).
LocalMatrix random_gl2_integral(const ContextPtr& ctx, Rng& rng);
/// Random h with exactly computable inverse, h = k * [[p^s, x], [0, 1]], k in SL2(Z_q).
LocalMatrix random_conjugator(const ContextPtr& ctx, Rng& rng, int max_s);

/// Kind of core element used to build a probe.
enum class ProbeKind { TraceNonUnit, EllFinite, EllInfinite, Iwasawa, OffSupport };

/// An exact probe g with v_p(det g) = 1 (except OffSupport) built as h^{-1} X h.
/// TraceNonUnit: X = [[0, -p u], [1, p t]]. EllFinite: X = diag(p u, 1 + p^j w), 1 <= j <= depth
/// (or a unit eigenvalue not congruent to 1 when j = 0 is possible). EllInfinite: X = diag(p u, 1).
/// Iwasawa: k [[p^a u1, c], [0, p^{1-a} u2]] with c in p^{-depth} Z_q. OffSupport: determinant valuation 0 or 2.
LocalMatrix random_probe(const ContextPtr& ctx, Rng& rng, ProbeKind kind, int depth);

/// Cycles through the probe kinds so every branch of phi_{p,n} is represented.
LocalMatrix branch_covering_probe(const ContextPtr& ctx, Rng& rng, int index, int n);

}  // namespace gl2lab
