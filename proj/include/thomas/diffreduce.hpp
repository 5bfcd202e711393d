#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "thomas/janet.hpp"
#include "thomas/poly.hpp"
#include "thomas/polyops.hpp"
#include "thomas/ring.hpp"
#include "thomas/system.hpp"

namespace thomas {

/// View of one reducer equation with cached ranked data.
struct EqView {
  Poly p;
  VarId ld = 0;
  std::uint32_t dep = 0;
  MultiIndex theta;    // derivation exponents of the leader
  std::uint32_t deg = 0;
};

EqView make_eq_view(const DiffRing& R, const Poly& p);

/// Which prolongations of the reducers may be used.
struct ProlongPolicy {
  bool allow_derivatives = true;  // false: purely algebraic reduction
  /// When set, only Janet-admissible prolongations are taken (requires the
  /// leader sets to be Janet complete for canonical results).
  const std::map<std::uint32_t, JanetAssignment>* tables = nullptr;
};

struct ReductionUse {
  std::size_t eq = 0;   // index into the reducer list
  MultiIndex theta;     // prolongation applied (all zero: none)
  Poly cofactor;
};

struct Reduction {
  Poly rem;
  Poly multiplier;  // product of initials/separants used
  std::vector<ReductionUse> uses;
  std::uint32_t steps = 0;

  /// multiplier * p == sum cofactor_i * theta_i(eq_i) + rem
  bool verify(const DiffRing& R, const Poly& p, const std::vector<EqView>& eqs) const;
};

/// Full Ritt pseudo-reduction of p modulo the equations: eliminates every jet
/// variable that is a proper derivative of a reducer leader (subject to the
/// policy) and reduces degrees in the leaders themselves below the reducer
/// degree. Picks the highest-ranked reducible jet first.
Reduction reduce(const DiffRing& R, const Poly& p, const std::vector<EqView>& eqs,
                 const ProlongPolicy& policy = {});

/// Janet tables of the leader monomials per dependent (equations only).
std::map<std::uint32_t, JanetAssignment> leader_tables(const DiffRing& R,
                                                       const std::vector<EqView>& eqs);

}  // namespace thomas
