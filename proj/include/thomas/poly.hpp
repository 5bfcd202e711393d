#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "thomas/ring.hpp"

namespace thomas {

/// Sparse power product over variable ids, entries sorted by id, exponents > 0.
struct Mono {
  std::vector<std::pair<VarId, std::uint32_t>> e;

  static Mono one() { return {}; }
  static Mono var(VarId v, std::uint32_t k = 1);

  bool is_one() const { return e.empty(); }
  std::uint32_t deg(VarId v) const;
  std::uint64_t total_deg() const;
  bool contains(VarId v) const { return deg(v) > 0; }

  Mono mul(const Mono& o) const;
  bool divides(const Mono& o) const;  // this | o
  Mono div(const Mono& o) const;      // this / o, assumes o | this

  /// Structural monomial order (graded, then lex with smaller ids more
  /// significant). Independent of any ranking; used for canonical forms and
  /// exact division only.
  static int cmp(const Mono& a, const Mono& b);

  bool operator==(const Mono& o) const { return e == o.e; }
  bool operator<(const Mono& o) const { return cmp(*this, o) < 0; }
};

/// Exact multivariate polynomial with rational coefficients. Terms are kept
/// sorted descending in the structural order with no zero coefficients, so
/// equality is structural.
class Poly {
 public:
  using Term = std::pair<Mono, mpq_class>;

  Poly() = default;
  explicit Poly(mpq_class c);
  static Poly var(VarId v, std::uint32_t k = 1);
  static Poly term(Mono m, mpq_class c);

  bool is_zero() const { return t_.empty(); }
  bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].first.is_one()); }
  mpq_class constant_value() const;  // requires is_constant()

  std::size_t n_terms() const { return t_.size(); }
  const std::vector<Term>& terms() const { return t_; }
  const Term& lt() const { return t_.front(); }  // structural leading term

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly mul_term(const Mono& m, const mpq_class& c) const;
  Poly mul_scalar(const mpq_class& c) const;
  Poly pow(std::uint32_t k) const;

  bool operator==(const Poly& o) const { return t_ == o.t_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }
  /// Structural total order (term-by-term); any fixed total order works.
  static int cmp(const Poly& a, const Poly& b);

  std::uint32_t deg(VarId v) const;
  std::uint64_t total_deg() const;
  bool contains(VarId v) const { return deg(v) > 0; }
  void vars(std::vector<VarId>& out) const;  // sorted ascending, unique

  /// Coefficient of v^k (a polynomial in the remaining variables).
  Poly coeff_of(VarId v, std::uint32_t k) const;
  /// Formal partial derivative.
  Poly derivative(VarId v) const;
  /// Substitute a polynomial for a variable (used by tests and specializations).
  Poly substitute(VarId v, const Poly& val) const;

  /// Rational-content-free associate with positive structural leading
  /// coefficient; integer coefficients with gcd 1. Zero stays zero.
  Poly canonical() const;
  /// The positive rational r such that canonical() == (*this) * (1/r) ... up
  /// to sign; returned as the exact scalar with sign so that
  ///   *this == canonical().mul_scalar(unit).
  mpq_class canonical_unit() const;

  static Poly from_terms(std::vector<Term> terms);  // normalizes (sorts, merges)

 private:
  std::vector<Term> t_;
};

Poly operator*(const mpq_class& c, const Poly& p);

}  // namespace thomas
