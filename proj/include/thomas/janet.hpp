#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "thomas/ring.hpp"

namespace thomas {

struct EmptySet : std::runtime_error {
  EmptySet() : std::runtime_error("Janet division needs a nonempty monomial set") {}
};

/// Janet division on a finite set of derivation monomials.
struct JanetAssignment {
  std::vector<MultiIndex> monos;             // sorted ascending (degrevlex, then lex)
  std::vector<std::vector<bool>> admissible; // [i][j]: is d_j admissible for monos[i]

  std::size_t find(const MultiIndex& m) const;
};

JanetAssignment janet_assign(std::vector<MultiIndex> M);

/// Owner of m in the union of admissible cones: the index i such that
/// m = monos[i] * (admissible derivations only), if any. Cones are pairwise
/// disjoint, so the owner is unique.
std::optional<std::size_t> cone_owner(const JanetAssignment& a, const MultiIndex& m);

bool is_janet_complete(const std::vector<MultiIndex>& M);

struct CompletionStep {
  MultiIndex added;
  MultiIndex parent;     // member the new monomial was derived from
  std::uint32_t deriv;   // index of the non-admissible derivation applied
};

struct CompletionResult {
  std::vector<MultiIndex> monos;  // Janet complete superset
  std::vector<CompletionStep> steps;
};

/// Minimal saturation closure: repeatedly prolong members by non-admissible
/// derivations whose product lies in no current cone.
CompletionResult janet_complete(std::vector<MultiIndex> M);

}  // namespace thomas
