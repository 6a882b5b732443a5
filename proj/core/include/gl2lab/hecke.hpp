#pragma once

#include <compare>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "gl2lab/local_matrix.hpp"
#include "gl2lab/rational_function.hpp"
#include "gl2lab/sampling.hpp"

namespace gl2lab {

/// Right coset g Gamma(p^n) of GL2(Q_q). Writing g = p^e M with M primitive
/// integral and M = H k with H = [[p^a, c], [0, p^b]] in column Hermite form,
/// the coset is determined by (e, a, b, c mod p^a, k mod p^n).
struct CosetKey {
  int exponent = 0;
  int a = 0;
  int b = 0;
  std::vector<std::int64_t> c;
  /// Row-major coefficient vectors of k mod p^n (empty at level 0).
  std::array<std::vector<std::int64_t>, 4> k;

  friend auto operator<=>(const CosetKey&, const CosetKey&) = default;
  friend bool operator==(const CosetKey&, const CosetKey&) = default;
  std::string to_string() const;
};

/// Key of g Gamma(p^n). PrecisionExhausted unless g is known modulo p^{n + v_p(det M)}.
CosetKey coset_key(const LocalMatrix& g, int n);
/// x lies in Gamma(p^n) (in GL2(Z_q) when n = 0).
bool in_congruence_subgroup(const LocalMatrix& x, int n);
/// Membership test g^{-1} g2 in Gamma(p^n).
bool same_right_coset(const LocalMatrix& g, const LocalMatrix& g2, int n);

/// vol Gamma(p^n) = (q - 1) / |GL2(GR(p^n, r))|, so that GL2(Z_q) has volume q - 1.
Rational congruence_volume(int p, int r, int n);

/// Function on GL2(Q_q), evaluated pointwise.
using LocalFunction = std::function<RationalFunctionT(const LocalMatrix&)>;

/// Finitely supported function on GL2(Q_q) / Gamma(p^n), stored per right coset.
class CosetFunction {
 public:
  struct Entry {
    LocalMatrix rep;
    RationalFunctionT value;
  };

  CosetFunction(ContextPtr ctx, int level);

  const ContextPtr& context() const { return ctx_; }
  int level() const { return level_; }
  long long q() const { return ctx_->q(); }
  const std::map<CosetKey, Entry>& support() const { return support_; }
  std::size_t size() const { return support_.size(); }

  /// Sets the value on rep * Gamma(p^n); zero values are dropped.
  void set(const LocalMatrix& rep, const RationalFunctionT& value);
  /// Adds to the value on rep * Gamma(p^n).
  void add(const LocalMatrix& rep, const RationalFunctionT& value);
  /// Value at g (zero off the support).
  RationalFunctionT operator()(const LocalMatrix& g) const;
  LocalFunction as_function() const;

  /// e_{Gamma(p^n)} = 1_{Gamma(p^n)} / vol.
  static CosetFunction idempotent(ContextPtr ctx, int n);
  /// Indicator of Gamma(p^n) x Gamma(p^n).
  static CosetFunction double_coset_indicator(ContextPtr ctx, int n, const LocalMatrix& x);
  /// phi_{p,n,t} (deformed) or phi_{p,n} on its full support. n >= 1.
  static CosetFunction phi(ContextPtr ctx, int n, bool deformed);
  /// phi_{p,0}: indicator of GL2(Z_q) diag(p, 1) GL2(Z_q) divided by q - 1, at level 0.
  static CosetFunction phi_zero(ContextPtr ctx);

 private:
  ContextPtr ctx_;
  int level_ = 0;
  std::map<CosetKey, Entry> support_;
};

/// Representatives of the right Gamma(p^n)-cosets g with v_p(det g) = 1 and k(g) <= n - 1.
std::vector<LocalMatrix> phi_support_cosets(const ContextPtr& ctx, int n);

/// (f1 * f2)(g) = vol Gamma(p^n) * sum over cosets h of f1 of f1(h) f2(h^{-1} g).
/// f2 must be left Gamma(p^n)-invariant.
RationalFunctionT convolve_at(const CosetFunction& f1, const LocalFunction& f2, const LocalMatrix& g);
/// f1 * f2 as a coset function; f2 must be left Gamma(p^n)-invariant.
CosetFunction convolve(const CosetFunction& f1, const CosetFunction& f2);

/// Left translates u f with u in Gamma(p^n) agree with f on the given points.
bool left_invariant_at(const CosetFunction& f, const std::vector<LocalMatrix>& points, Rng& rng, int translates);

/// Average of phi_{p,n+1,t}(g (1 + p^n X)) over X in M2(F_q).
RationalFunctionT tower_average(const LocalMatrix& g, int n);

struct TowerReport {
  long long samples = 0;
  long long failures = 0;
  /// Samples where the t = q specialization disagrees with phi_{p,n}.
  long long specialization_failures = 0;
  /// Samples per value of k(g), clamped to [0, n] (index n + 1 counts k(g) > n).
  std::vector<long long> by_k;
  /// Samples per branch of phi_{p,n}: off-support, trace-nonunit, ell-below, ell-at-least.
  std::array<long long, 4> by_branch{};
  std::string counterexample;
  bool pass() const { return failures == 0 && specialization_failures == 0; }
};

/// Checks phi_{p,n,t} = phi_{p,n+1,t} * e_{Gamma(p^n)} on each sample.
TowerReport tower_identity_check(const std::vector<LocalMatrix>& samples, int n);

struct CentralityResult {
  std::string generator;
  long long samples = 0;
  long long failures = 0;
  /// Samples where both sides are nonzero.
  long long nonzero = 0;
  std::string counterexample;
};

/// phi * f = f * phi at every sample, for each named generator f.
std::vector<CentralityResult> centrality_check(const CosetFunction& phi,
                                               const std::vector<std::pair<std::string, CosetFunction>>& generators,
                                               const std::vector<LocalMatrix>& samples);

/// Points of supp(a) supp(b) and supp(b) supp(a), right-translated by random elements of GL2(Z_q).
std::vector<LocalMatrix> product_samples(const CosetFunction& a, const CosetFunction& b, Rng& rng, int count);

}  // namespace gl2lab
