#pragma once

// Shared helpers for the test suites. The oracles here are written against
// the plain Poly arithmetic (add/mul/substitute) only, independent of the
// library routines they are used to check.

#include <cstdint>
#include <random>
#include <vector>

#include "thomas/poly.hpp"
#include "thomas/polyops.hpp"
#include "thomas/ring.hpp"

namespace testsupport {

using thomas::DiffRing;
using thomas::Mono;
using thomas::Poly;
using thomas::VarId;

// ---- univariate polynomials over Q (independent back-substitution oracle) --

using UniQ = std::vector<mpq_class>;  // coefficients, index = degree

inline void uni_trim(UniQ& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int uni_deg(const UniQ& a) { return static_cast<int>(a.size()) - 1; }

inline UniQ uni_derivative(const UniQ& a) {
  UniQ d;
  for (std::size_t k = 1; k < a.size(); ++k) d.push_back(a[k] * static_cast<long>(k));
  uni_trim(d);
  return d;
}

// exact remainder of a by b over Q (b nonzero)
inline UniQ uni_rem(UniQ a, const UniQ& b) {
  uni_trim(a);
  while (uni_deg(a) >= uni_deg(b)) {
    mpq_class f = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    uni_trim(a);
    if (a.empty()) break;
  }
  return a;
}

inline UniQ uni_gcd(UniQ a, UniQ b) {
  uni_trim(a);
  uni_trim(b);
  while (!b.empty()) {
    UniQ r = uni_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    mpq_class lc = a.back();
    for (auto& c : a) c /= lc;
  }
  return a;
}

// number of distinct complex roots = deg(a / gcd(a, a'))
inline int uni_distinct_roots(UniQ a) {
  uni_trim(a);
  if (a.empty() || uni_deg(a) == 0) return 0;
  UniQ g = uni_gcd(a, uni_derivative(a));
  return uni_deg(a) - uni_deg(g);
}

inline mpq_class uni_eval(const UniQ& a, const mpq_class& x) {
  mpq_class r = 0;
  for (std::size_t k = a.size(); k-- > 0;) r = r * x + a[k];
  return r;
}

// specialize a multivariate polynomial to a univariate one in v by
// substituting rationals for all other variables
inline UniQ specialize_to_uni(const Poly& p, VarId v,
                              const std::vector<std::pair<VarId, mpq_class>>& vals) {
  Poly q = p;
  for (const auto& [w, val] : vals) q = q.substitute(w, Poly(val));
  UniQ out(q.deg(v) + 1, mpq_class(0));
  for (const auto& [m, c] : q.terms()) out[m.deg(v)] += c;
  uni_trim(out);
  return out;
}

// ---- Sylvester determinant by minor expansion (resultant oracle) ----------

inline Poly det_by_minors(std::vector<std::vector<Poly>> M) {
  std::size_t n = M.size();
  if (n == 0) return Poly(mpq_class(1));
  if (n == 1) return M[0][0];
  Poly acc;
  for (std::size_t i = 0; i < n; ++i) {
    if (M[i][0].is_zero()) continue;
    std::vector<std::vector<Poly>> sub;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == i) continue;
      sub.emplace_back(M[r].begin() + 1, M[r].end());
    }
    Poly term = M[i][0] * det_by_minors(std::move(sub));
    acc = (i % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

inline Poly resultant_oracle(const Poly& a, const Poly& b, VarId v) {
  std::uint32_t m = a.deg(v), l = b.deg(v);
  std::size_t n = m + l;
  std::vector<std::vector<Poly>> M(n, std::vector<Poly>(n));
  for (std::size_t r = 0; r < l; ++r)
    for (std::uint32_t k = 0; k <= m; ++k) M[r][r + (m - k)] = a.coeff_of(v, k);
  for (std::size_t r = 0; r < m; ++r)
    for (std::uint32_t k = 0; k <= l; ++k) M[l + r][r + (l - k)] = b.coeff_of(v, k);
  return det_by_minors(std::move(M));
}

// ---- random polynomial generator ------------------------------------------

struct Rng {
  std::mt19937 g;
  explicit Rng(std::uint32_t seed) : g(seed) {}
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(g); }
  mpq_class coef(int span = 9) {
    int n = uniform(-span, span);
    return mpq_class(n);
  }
};

// random polynomial in the given variables, total degree <= deg
inline Poly random_poly(Rng& rng, const std::vector<VarId>& vars, int deg, int terms,
                        bool nonzero = true) {
  Poly p;
  for (int t = 0; t < terms; ++t) {
    Mono m;
    int budget = rng.uniform(0, deg);
    for (VarId v : vars) {
      if (budget <= 0) break;
      int e = rng.uniform(0, budget);
      if (e) m = m.mul(Mono::var(v, e));
      budget -= e;
    }
    p += Poly::term(m, rng.coef());
  }
  if (nonzero && p.is_zero()) p = Poly::var(vars[0]) + Poly(mpq_class(1));
  return p;
}

}  // namespace testsupport
