#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "thomas/poly.hpp"
#include "thomas/ring.hpp"

namespace thomas {

struct GroundPolynomial : std::runtime_error {
  GroundPolynomial() : std::runtime_error("polynomial has no ranked variable") {}
};
struct DegreeOrder : std::runtime_error {
  DegreeOrder() : std::runtime_error("pseudo-division requires deg(p1) >= deg(p2)") {}
};

/// Greatest ranked (jet) variable occurring in p, or nullopt for ground p.
std::optional<VarId> leader(const DiffRing& R, const Poly& p);
VarId leader_or_throw(const DiffRing& R, const Poly& p);
bool is_ground(const DiffRing& R, const Poly& p);

std::uint32_t leader_deg(const DiffRing& R, const Poly& p);
Poly initial(const DiffRing& R, const Poly& p);
Poly separant(const DiffRing& R, const Poly& p);
/// p minus its leading coefficient times the leader power.
Poly reductum(const DiffRing& R, const Poly& p);

/// Signed discriminant: (-1)^(d(d-1)/2) res(p, dp/dld(p), ld(p)) / init(p).
/// Degree-1 polynomials have discriminant 1.
Poly discriminant(const DiffRing& R, const Poly& p);

struct PseudoDiv {
  Poly rem;   // pseudo-remainder
  Poly quo;   // pseudo-quotient
  Poly mult;  // power of init(b): mult * a == quo * b + rem
  std::uint32_t steps = 0;
};

/// Pseudo-division of a by b with respect to v (deg_v(b) >= 1). With
/// full_power the multiplier is padded to init(b)^(deg a - deg b + 1).
PseudoDiv pseudo_divide(const Poly& a, const Poly& b, VarId v, bool full_power = false);
Poly prem(const Poly& a, const Poly& b, VarId v);
Poly pquo(const Poly& a, const Poly& b, VarId v);

/// Exact multivariate division; nullopt when b does not divide a.
std::optional<Poly> exact_div(const Poly& a, const Poly& b);
Poly exact_div_or_throw(const Poly& a, const Poly& b);

/// Gcd over Q[vars], canonical (unit-normalized); gcd of constants is 1.
Poly gcd(const Poly& a, const Poly& b);
/// Content of p with respect to v: gcd of the v-coefficients.
Poly content(const Poly& p, VarId v);
Poly primitive_part(const Poly& p, VarId v);

/// Resultant with respect to v via fraction-free elimination of the
/// Sylvester matrix (exact, correct sign).
Poly resultant(const Poly& a, const Poly& b, VarId v);

/// p / gcd(p, dp/dv): same zero set, v-repeated factors collapsed.
Poly squarefree_part(const Poly& p, VarId v);

/// Yun decomposition with respect to v of the v-primitive part:
/// p = content * prod f_i^i; returns the (f_i, i) with deg_v f_i >= 1.
std::vector<std::pair<Poly, std::uint32_t>> yun_decompose(const Poly& p, VarId v);

/// Exact polynomial square root, if p is a perfect square over Q[vars].
std::optional<Poly> poly_sqrt(const Poly& p);

/// Splits p into pairwise distinct canonical factors: monomial and content
/// factors, squarefree parts per multiplicity, and quadratics whose
/// discriminant is a perfect square. Not a complete factorization. Factors
/// are ordered by descending leader, then descending structural order.
std::vector<Poly> factor_split(const DiffRing& R, const Poly& p);

/// Formal derivation d/d(indep j): jets bump their multiindex, the ground
/// field is differentiated through delta_j.
Poly differentiate(const DiffRing& R, const Poly& p, std::uint32_t j);
Poly differentiate(const DiffRing& R, const Poly& p, const MultiIndex& theta);

/// Divides out the ground-field content (a unit): the gcd of the
/// coefficients with respect to the ranked variables.
Poly remove_ground_content(const DiffRing& R, const Poly& p);

struct PrsResult {
  std::vector<Poly> chain;     // f0, f1, f2, ... (f_i for i >= 2 primitive in v)
  std::vector<Poly> contents;  // contents removed from f2, f3, ...
  std::vector<PseudoDiv> divs; // division data producing f2, f3, ...
  Poly last;                   // last nonzero member
};

/// Euclid's algorithm on (p, q) viewed univariately in v, using
/// pseudo-division with content removal for coefficient control.
PrsResult euclid_prs(const Poly& p, const Poly& q, VarId v);

/// Discriminant split data: disc(p) together with the PRS of (p, dp/dv)
/// whose bookkeeping yields the square-free part on the disc = 0 branch.
struct SquarefreeSplitData {
  Poly disc;
  PrsResult prs;
};
SquarefreeSplitData squarefree_split_data(const DiffRing& R, const Poly& p);

}  // namespace thomas
