#include "thomas/poly.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace thomas {

Mono Mono::var(VarId v, std::uint32_t k) {
  Mono m;
  if (k) m.e.emplace_back(v, k);
  return m;
}

std::uint32_t Mono::deg(VarId v) const {
  for (const auto& [w, k] : e)
    if (w == v) return k;
  return 0;
}

std::uint64_t Mono::total_deg() const {
  std::uint64_t d = 0;
  for (const auto& [w, k] : e) d += k;
  return d;
}

Mono Mono::mul(const Mono& o) const {
  Mono r;
  r.e.reserve(e.size() + o.e.size());
  std::size_t i = 0, j = 0;
  while (i < e.size() || j < o.e.size()) {
    if (j == o.e.size() || (i < e.size() && e[i].first < o.e[j].first)) {
      r.e.push_back(e[i++]);
    } else if (i == e.size() || o.e[j].first < e[i].first) {
      r.e.push_back(o.e[j++]);
    } else {
      r.e.emplace_back(e[i].first, e[i].second + o.e[j].second);
      ++i, ++j;
    }
  }
  return r;
}

bool Mono::divides(const Mono& o) const {
  std::size_t j = 0;
  for (const auto& [v, k] : e) {
    while (j < o.e.size() && o.e[j].first < v) ++j;
    if (j == o.e.size() || o.e[j].first != v || o.e[j].second < k) return false;
  }
  return true;
}

Mono Mono::div(const Mono& o) const {
  Mono r;
  std::size_t j = 0;
  for (const auto& [v, k] : e) {
    std::uint32_t sub = 0;
    while (j < o.e.size() && o.e[j].first < v) ++j;
    if (j < o.e.size() && o.e[j].first == v) sub = o.e[j].second;
    if (sub > k) throw std::logic_error("Mono::div: not divisible");
    if (k - sub) r.e.emplace_back(v, k - sub);
  }
  return r;
}

int Mono::cmp(const Mono& a, const Mono& b) {
  std::uint64_t da = a.total_deg(), db = b.total_deg();
  if (da != db) return da > db ? 1 : -1;
  // lex: scan ids ascending; higher exponent on the smaller id wins
  std::size_t i = 0, j = 0;
  while (i < a.e.size() && j < b.e.size()) {
    if (a.e[i].first != b.e[j].first)
      return a.e[i].first < b.e[j].first ? 1 : -1;
    if (a.e[i].second != b.e[j].second)
      return a.e[i].second > b.e[j].second ? 1 : -1;
    ++i, ++j;
  }
  if (i < a.e.size()) return 1;
  if (j < b.e.size()) return -1;
  return 0;
}

Poly::Poly(mpq_class c) {
  if (c != 0) t_.emplace_back(Mono::one(), std::move(c));
}

Poly Poly::var(VarId v, std::uint32_t k) {
  Poly p;
  p.t_.emplace_back(Mono::var(v, k), mpq_class(1));
  return p;
}

Poly Poly::term(Mono m, mpq_class c) {
  Poly p;
  if (c != 0) p.t_.emplace_back(std::move(m), std::move(c));
  return p;
}

mpq_class Poly::constant_value() const {
  if (t_.empty()) return mpq_class(0);
  return t_[0].second;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [m, c] : r.t_) c = -c;
  return r;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r;
  r.t_.reserve(t_.size() + o.t_.size());
  std::size_t i = 0, j = 0;
  while (i < t_.size() || j < o.t_.size()) {
    if (j == o.t_.size() || (i < t_.size() && Mono::cmp(t_[i].first, o.t_[j].first) > 0)) {
      r.t_.push_back(t_[i++]);
    } else if (i == t_.size() || Mono::cmp(t_[i].first, o.t_[j].first) < 0) {
      r.t_.push_back(o.t_[j++]);
    } else {
      mpq_class c = t_[i].second + o.t_[j].second;
      if (c != 0) r.t_.emplace_back(t_[i].first, std::move(c));
      ++i, ++j;
    }
  }
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::mul_term(const Mono& m, const mpq_class& c) const {
  if (c == 0) return Poly();
  Poly r;
  r.t_.reserve(t_.size());
  for (const auto& [mm, cc] : t_) r.t_.emplace_back(mm.mul(m), cc * c);
  // multiplying by a fixed monomial preserves the order
  return r;
}

Poly Poly::mul_scalar(const mpq_class& c) const {
  if (c == 0) return Poly();
  Poly r = *this;
  for (auto& [m, cc] : r.t_) cc *= c;
  return r;
}

Poly operator*(const mpq_class& c, const Poly& p) { return p.mul_scalar(c); }

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly();
  const Poly& small = t_.size() <= o.t_.size() ? *this : o;
  const Poly& big = t_.size() <= o.t_.size() ? o : *this;
  Poly acc;
  for (const auto& [m, c] : small.t_) acc += big.mul_term(m, c);
  return acc;
}

Poly Poly::pow(std::uint32_t k) const {
  Poly r(mpq_class(1));
  Poly b = *this;
  while (k) {
    if (k & 1) r *= b;
    b = k > 1 ? b * b : b;
    k >>= 1;
  }
  return r;
}

int Poly::cmp(const Poly& a, const Poly& b) {
  std::size_t n = std::min(a.t_.size(), b.t_.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = Mono::cmp(a.t_[i].first, b.t_[i].first);
    if (c != 0) return c;
    int s = ::cmp(a.t_[i].second, b.t_[i].second);
    if (s != 0) return s > 0 ? 1 : -1;
  }
  if (a.t_.size() != b.t_.size()) return a.t_.size() > b.t_.size() ? 1 : -1;
  return 0;
}

std::uint32_t Poly::deg(VarId v) const {
  std::uint32_t d = 0;
  for (const auto& [m, c] : t_) d = std::max(d, m.deg(v));
  return d;
}

std::uint64_t Poly::total_deg() const {
  std::uint64_t d = 0;
  for (const auto& [m, c] : t_) d = std::max(d, m.total_deg());
  return d;
}

void Poly::vars(std::vector<VarId>& out) const {
  out.clear();
  for (const auto& [m, c] : t_)
    for (const auto& [v, k] : m.e) out.push_back(v);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
}

Poly Poly::coeff_of(VarId v, std::uint32_t k) const {
  std::vector<Term> terms;
  for (const auto& [m, c] : t_) {
    if (m.deg(v) != k) continue;
    terms.emplace_back(m.div(Mono::var(v, k)), c);
  }
  return from_terms(std::move(terms));
}

Poly Poly::derivative(VarId v) const {
  std::vector<Term> terms;
  for (const auto& [m, c] : t_) {
    std::uint32_t k = m.deg(v);
    if (!k) continue;
    terms.emplace_back(m.div(Mono::var(v, 1)), c * k);
  }
  return from_terms(std::move(terms));
}

Poly Poly::substitute(VarId v, const Poly& val) const {
  Poly r;
  for (const auto& [m, c] : t_) {
    std::uint32_t k = m.deg(v);
    Poly piece = Poly::term(k ? m.div(Mono::var(v, k)) : m, c);
    if (k) piece *= val.pow(k);
    r += piece;
  }
  return r;
}

mpq_class Poly::canonical_unit() const {
  if (t_.empty()) return mpq_class(1);
  mpz_class num_gcd = 0, den_lcm = 1;
  for (const auto& [m, c] : t_) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
  }
  mpq_class unit(num_gcd, den_lcm);
  unit.canonicalize();
  if (t_[0].second < 0) unit = -unit;
  return unit;
}

Poly Poly::canonical() const {
  if (t_.empty()) return *this;
  mpq_class u = canonical_unit();
  return mul_scalar(1 / u);
}

Poly Poly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return Mono::cmp(a.first, b.first) > 0; });
  Poly r;
  for (auto& t : terms) {
    if (!r.t_.empty() && r.t_.back().first == t.first) {
      r.t_.back().second += t.second;
      if (r.t_.back().second == 0) r.t_.pop_back();
    } else if (t.second != 0) {
      r.t_.push_back(std::move(t));
    }
  }
  return r;
}

}  // namespace thomas
