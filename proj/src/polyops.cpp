#include "thomas/polyops.hpp"

#include <algorithm>
#include <map>

namespace thomas {

std::optional<VarId> leader(const DiffRing& R, const Poly& p) {
  std::vector<VarId> vs;
  p.vars(vs);
  std::optional<VarId> best;
  for (VarId v : vs) {
    if (!R.is_jet(v)) continue;
    if (!best || R.compare(v, *best) > 0) best = v;
  }
  return best;
}

VarId leader_or_throw(const DiffRing& R, const Poly& p) {
  auto v = leader(R, p);
  if (!v) throw GroundPolynomial();
  return *v;
}

bool is_ground(const DiffRing& R, const Poly& p) { return !leader(R, p).has_value(); }

std::uint32_t leader_deg(const DiffRing& R, const Poly& p) {
  return p.deg(leader_or_throw(R, p));
}

Poly initial(const DiffRing& R, const Poly& p) {
  VarId v = leader_or_throw(R, p);
  return p.coeff_of(v, p.deg(v));
}

Poly separant(const DiffRing& R, const Poly& p) {
  return p.derivative(leader_or_throw(R, p));
}

Poly reductum(const DiffRing& R, const Poly& p) {
  VarId v = leader_or_throw(R, p);
  std::uint32_t d = p.deg(v);
  return p - initial(R, p) * Poly::var(v, d);
}

PseudoDiv pseudo_divide(const Poly& a, const Poly& b, VarId v, bool full_power) {
  std::uint32_t db = b.deg(v);
  if (db == 0) throw std::invalid_argument("pseudo_divide: divisor free of v");
  std::uint32_t da = a.deg(v);
  if (full_power && da < db) throw DegreeOrder();
  Poly lb = b.coeff_of(v, db);
  PseudoDiv out;
  out.rem = a;
  out.quo = Poly();
  out.mult = Poly(mpq_class(1));
  while (!out.rem.is_zero()) {
    std::uint32_t dr = out.rem.deg(v);
    if (dr < db) break;
    Poly lr = out.rem.coeff_of(v, dr);
    Poly shift = lr * Poly::var(v, dr - db);
    out.rem = lb * out.rem - shift * b;
    out.quo = lb * out.quo + shift;
    out.mult = lb * out.mult;
    out.steps++;
  }
  if (full_power && da >= db) {
    for (std::uint32_t e = out.steps; e < da - db + 1; ++e) {
      out.rem = lb * out.rem;
      out.quo = lb * out.quo;
      out.mult = lb * out.mult;
      out.steps++;
    }
  }
  return out;
}

Poly prem(const Poly& a, const Poly& b, VarId v) { return pseudo_divide(a, b, v).rem; }
Poly pquo(const Poly& a, const Poly& b, VarId v) { return pseudo_divide(a, b, v).quo; }

std::optional<Poly> exact_div(const Poly& a, const Poly& b) {
  if (b.is_zero()) return std::nullopt;
  if (a.is_zero()) return Poly();
  Poly rem = a, quo;
  const auto& [lbm, lbc] = b.lt();
  while (!rem.is_zero()) {
    const auto& [lrm, lrc] = rem.lt();
    if (!lbm.divides(lrm)) return std::nullopt;
    Poly t = Poly::term(lrm.div(lbm), lrc / lbc);
    quo += t;
    rem -= t * b;
  }
  return quo;
}

Poly exact_div_or_throw(const Poly& a, const Poly& b) {
  auto q = exact_div(a, b);
  if (!q) throw std::logic_error("exact_div: not divisible");
  return *q;
}

namespace {

VarId max_structural_var(const Poly& p) {
  std::vector<VarId> vs;
  p.vars(vs);
  return vs.back();
}

Poly gcd_rec(Poly a, Poly b);

Poly content_rec(const Poly& p, VarId v) {
  Poly c;
  for (std::uint32_t k = 0; k <= p.deg(v); ++k) {
    Poly ck = p.coeff_of(v, k);
    if (ck.is_zero()) continue;
    c = gcd_rec(c, ck);
    if (c.is_constant()) break;
  }
  return c.canonical();
}

Poly gcd_rec(Poly a, Poly b) {
  if (a.is_zero()) return b.canonical();
  if (b.is_zero()) return a.canonical();
  if (a.is_constant() || b.is_constant()) return Poly(mpq_class(1));
  VarId v = std::max(max_structural_var(a), max_structural_var(b));
  std::uint32_t da = a.deg(v), db = b.deg(v);
  if (da == 0) return gcd_rec(a, content_rec(b, v));
  if (db == 0) return gcd_rec(content_rec(a, v), b);
  Poly ca = content_rec(a, v), cb = content_rec(b, v);
  Poly c = gcd_rec(ca, cb);
  Poly A = exact_div_or_throw(a, ca);
  Poly B = exact_div_or_throw(b, cb);
  if (da < db) std::swap(A, B);
  // primitive pseudo-remainder sequence
  while (true) {
    Poly r = pseudo_divide(A, B, v).rem;
    if (r.is_zero()) break;
    if (r.deg(v) == 0) return c;  // coprime apart from content
    r = exact_div_or_throw(r, content_rec(r, v));
    A = B;
    B = r;
  }
  return (c * exact_div_or_throw(B, content_rec(B, v))).canonical();
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) { return gcd_rec(a.canonical(), b.canonical()); }

Poly content(const Poly& p, VarId v) {
  if (p.is_zero()) return Poly();
  return content_rec(p, v);
}

Poly primitive_part(const Poly& p, VarId v) {
  if (p.is_zero()) return p;
  return exact_div_or_throw(p, content_rec(p, v)).canonical();
}

Poly resultant(const Poly& a, const Poly& b, VarId v) {
  std::uint32_t m = a.deg(v), l = b.deg(v);
  if (a.is_zero() || b.is_zero()) return Poly();
  if (m == 0 && l == 0) return Poly(mpq_class(1));
  if (m == 0) return a.pow(l);
  if (l == 0) return b.pow(m);
  std::size_t n = m + l;
  // Sylvester matrix: l shifted rows of a's coefficients, m rows of b's
  std::vector<std::vector<Poly>> M(n, std::vector<Poly>(n));
  for (std::size_t r = 0; r < l; ++r)
    for (std::uint32_t k = 0; k <= m; ++k) M[r][r + (m - k)] = a.coeff_of(v, k);
  for (std::size_t r = 0; r < m; ++r)
    for (std::uint32_t k = 0; k <= l; ++k) M[l + r][r + (l - k)] = b.coeff_of(v, k);
  // Bareiss fraction-free elimination with row pivoting
  int sign = 1;
  Poly prev(mpq_class(1));
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (M[k][k].is_zero()) {
      std::size_t r = k + 1;
      while (r < n && M[r][k].is_zero()) ++r;
      if (r == n) return Poly();
      std::swap(M[k], M[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        M[i][j] = exact_div_or_throw(M[k][k] * M[i][j] - M[i][k] * M[k][j], prev);
      M[i][k] = Poly();
    }
    prev = M[k][k];
  }
  Poly det = M[n - 1][n - 1];
  return sign < 0 ? -det : det;
}

Poly discriminant(const DiffRing& R, const Poly& p) {
  VarId v = leader_or_throw(R, p);
  std::uint32_t d = p.deg(v);
  if (d < 1) throw GroundPolynomial();
  if (d == 1) return Poly(mpq_class(1));
  Poly res = resultant(p, p.derivative(v), v);
  Poly disc = exact_div_or_throw(res, p.coeff_of(v, d));
  if ((static_cast<std::uint64_t>(d) * (d - 1) / 2) % 2 == 1) disc = -disc;
  return disc;
}

Poly squarefree_part(const Poly& p, VarId v) {
  if (p.is_zero() || p.deg(v) == 0) return p;
  Poly g = gcd(p, p.derivative(v));
  if (g.is_constant()) return p;
  return exact_div_or_throw(p, g);
}

std::vector<std::pair<Poly, std::uint32_t>> yun_decompose(const Poly& p, VarId v) {
  std::vector<std::pair<Poly, std::uint32_t>> out;
  Poly f = primitive_part(p, v);
  Poly df = f.derivative(v);
  Poly g = gcd(f, df);
  if (g.is_constant()) {
    out.emplace_back(f.canonical(), 1);
    return out;
  }
  Poly c = exact_div_or_throw(f, g);
  Poly d = exact_div_or_throw(df, g) - c.derivative(v);
  for (std::uint32_t i = 1; !c.is_constant(); ++i) {
    Poly a = gcd(c, d);
    if (a.deg(v) >= 1) out.emplace_back(a.canonical(), i);
    c = exact_div_or_throw(c, a);
    d = exact_div_or_throw(d, a) - c.derivative(v);
  }
  return out;
}

std::optional<Poly> poly_sqrt(const Poly& p) {
  if (p.is_zero()) return Poly();
  if (p.is_constant()) {
    mpq_class c = p.constant_value();
    if (c < 0) return std::nullopt;
    mpz_class sn, sd;
    if (!mpz_perfect_square_p(c.get_num().get_mpz_t())) return std::nullopt;
    if (!mpz_perfect_square_p(c.get_den().get_mpz_t())) return std::nullopt;
    mpz_sqrt(sn.get_mpz_t(), c.get_num().get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), c.get_den().get_mpz_t());
    return Poly(mpq_class(sn, sd));
  }
  VarId v = max_structural_var(p);
  std::uint32_t d = p.deg(v);
  if (d % 2) return std::nullopt;
  std::uint32_t h = d / 2;
  auto lead = poly_sqrt(p.coeff_of(v, d));
  if (!lead) return std::nullopt;
  Poly s = *lead * Poly::var(v, h);
  Poly two_lead = mpq_class(2) * *lead;
  for (std::uint32_t k = h; k-- > 0;) {
    Poly r = p - s * s;
    if (r.is_zero()) break;
    Poly c = r.coeff_of(v, k + h);
    if (c.is_zero()) continue;
    auto sk = exact_div(c, two_lead);
    if (!sk) return std::nullopt;
    s += *sk * Poly::var(v, k);
  }
  if (!(p - s * s).is_zero()) return std::nullopt;
  return s;
}

namespace {

void push_factor(std::vector<Poly>& out, const Poly& f) {
  Poly c = f.canonical();
  if (c.is_constant()) return;
  for (const auto& g : out)
    if (g == c) return;
  out.push_back(c);
}

// try to split a v-quadratic into two v-linear factors over Q[lower vars]
bool split_quadratic(const Poly& f, VarId v, std::vector<Poly>& halves) {
  Poly A = f.coeff_of(v, 2), B = f.coeff_of(v, 1), C = f.coeff_of(v, 0);
  Poly delta = B * B - mpq_class(4) * A * C;
  auto W = poly_sqrt(delta.canonical());
  if (!W) return false;
  // re-scale the root: delta = u * canonical, need sqrt of delta itself
  mpq_class u = delta.canonical_unit();
  if (u != 0) {
    if (!(delta - (*W * *W).mul_scalar(u)).is_zero()) {
      // canonical unit is not a perfect square times the canonical part
      auto W2 = poly_sqrt(delta);
      if (!W2) return false;
      W = W2;
    } else {
      auto su = poly_sqrt(Poly(u));
      if (!su) return false;
      W = *W * *su;
    }
  }
  Poly two_a = mpq_class(2) * A;
  Poly g1 = primitive_part(two_a * Poly::var(v) + B - *W, v);
  if (g1.deg(v) != 1) return false;
  auto q = exact_div(f, g1);
  if (!q) return false;
  halves.push_back(g1);
  halves.push_back(q->canonical());
  return true;
}

}  // namespace

std::vector<Poly> factor_split(const DiffRing& R, const Poly& p) {
  std::vector<Poly> out;
  std::vector<Poly> work{p.canonical()};
  while (!work.empty()) {
    Poly f = work.back();
    work.pop_back();
    if (f.is_constant()) continue;
    auto lv = leader(R, f);
    if (!lv) {
      // ground factor: a unit, ignore
      continue;
    }
    VarId v = *lv;
    // monomial part: variables dividing every term
    Mono common = f.terms().front().first;
    for (const auto& [m, c] : f.terms()) {
      Mono next;
      std::size_t i = 0;
      for (const auto& [w, k] : common.e) {
        std::uint32_t dk = m.deg(w);
        if (dk) next.e.emplace_back(w, std::min(k, dk));
        (void)i;
      }
      common = next;
      if (common.is_one()) break;
    }
    if (!common.is_one()) {
      for (const auto& [w, k] : common.e)
        push_factor(out, Poly::var(w));
      f = Poly::term(Mono::one(), 1) * exact_div_or_throw(f, Poly::term(common, 1));
      if (f.is_constant()) continue;
      lv = leader(R, f);
      if (!lv) continue;
      v = *lv;
    }
    Poly c = content(f, v);
    if (!c.is_constant()) {
      work.push_back(c);
      f = exact_div_or_throw(f, c);
    }
    for (auto& [a, mult] : yun_decompose(f, v)) {
      std::vector<Poly> halves;
      if (a.deg(v) == 2 && split_quadratic(a, v, halves)) {
        for (auto& h : halves) work.push_back(h);
      } else {
        push_factor(out, a);
      }
    }
  }
  std::sort(out.begin(), out.end(), [&R](const Poly& a, const Poly& b) {
    auto la = leader(R, a), lb = leader(R, b);
    if (la && lb && *la != *lb) return R.compare(*la, *lb) > 0;
    return Poly::cmp(a, b) > 0;
  });
  return out;
}

Poly differentiate(const DiffRing& R, const Poly& p, std::uint32_t j) {
  Poly out;
  for (const auto& [m, c] : p.terms()) {
    for (const auto& [v, k] : m.e) {
      auto dv = R.derive_var(v, j);
      if (!dv.var && !dv.unit) continue;
      Mono rest = m.div(Mono::var(v, 1));
      Poly piece = Poly::term(rest, c * k);
      if (dv.var) piece *= Poly::var(*dv.var);
      out += piece;
    }
  }
  return out;
}

Poly differentiate(const DiffRing& R, const Poly& p, const MultiIndex& theta) {
  Poly out = p;
  for (std::uint32_t j = 0; j < theta.size(); ++j)
    for (std::uint32_t r = 0; r < theta[j]; ++r) out = differentiate(R, out, j);
  return out;
}

Poly remove_ground_content(const DiffRing& R, const Poly& p) {
  if (p.is_zero()) return p;
  // collect coefficients with respect to the ranked monomial part
  std::map<Mono, Poly> coeffs;
  for (const auto& [m, c] : p.terms()) {
    Mono ranked, ground;
    for (const auto& [v, k] : m.e)
      (R.is_jet(v) ? ranked : ground).e.emplace_back(v, k);
    coeffs[ranked] += Poly::term(ground, c);
  }
  Poly g;
  for (auto& [m, c] : coeffs) {
    g = gcd(g, c);
    if (g.is_constant()) break;
  }
  if (g.is_zero() || g.is_constant()) return p.canonical();
  Poly out;
  for (auto& [m, c] : coeffs) out += Poly::term(m, 1) * exact_div_or_throw(c, g);
  return out.canonical();
}

PrsResult euclid_prs(const Poly& p, const Poly& q, VarId v) {
  PrsResult out;
  out.chain.push_back(p);
  out.chain.push_back(q);
  Poly a = p, b = q;
  out.last = b.is_zero() ? a : b;
  while (!b.is_zero() && b.deg(v) >= 1 && a.deg(v) >= b.deg(v)) {
    PseudoDiv d = pseudo_divide(a, b, v);
    out.divs.push_back(d);
    Poly r = d.rem;
    if (r.is_zero()) {
      out.last = b;
      out.chain.push_back(r);
      out.contents.push_back(Poly(mpq_class(1)));
      return out;
    }
    Poly c = r.deg(v) >= 1 ? content(r, v) : Poly(mpq_class(1));
    if (!c.is_constant()) r = exact_div_or_throw(r, c);
    r = r.canonical();
    out.contents.push_back(c);
    out.chain.push_back(r);
    out.last = r;
    a = b;
    b = r;
    if (b.deg(v) == 0) break;
  }
  return out;
}

SquarefreeSplitData squarefree_split_data(const DiffRing& R, const Poly& p) {
  VarId v = leader_or_throw(R, p);
  SquarefreeSplitData out;
  out.disc = discriminant(R, p);
  out.prs = euclid_prs(p, p.derivative(v), v);
  return out;
}

}  // namespace thomas
