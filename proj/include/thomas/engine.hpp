#pragma once

#include <optional>
#include <stdexcept>

#include "thomas/diffreduce.hpp"
#include "thomas/system.hpp"

namespace thomas {

struct NotZeroDimensional : std::runtime_error {
  NotZeroDimensional() : std::runtime_error("system is not zero-dimensional") {}
};
struct NotBlockRanking : std::runtime_error {
  NotBlockRanking() : std::runtime_error("block index out of range for this ranking") {}
};

/// Thomas decomposition of an algebraic or differential system into simple
/// systems whose solution sets partition the input's. An inconsistent input
/// yields an empty list.
Decomposition decompose(const DiffSystem& S, const DecomposeOptions& opts = {});

/// Membership of p in the saturation ideal E : q^inf of a simple system:
/// the full pseudo-remainder modulo the equations and their (admissible)
/// derivatives is zero.
bool member(const SimpleSystem& S, const Poly& p);
Reduction member_reduction(const SimpleSystem& S, const Poly& p);

/// Membership in the radical of the input's ideal: member in every part.
bool member_radical(const std::vector<SimpleSystem>& parts, const Poly& p);

/// Solution sets of two simple systems over the same ring are disjoint iff
/// their union is inconsistent.
bool are_disjoint(const SimpleSystem& a, const SimpleSystem& b,
                  const DecomposeOptions& opts = {});

/// Checks the simple-system conditions: non-ground members with pairwise
/// distinct leaders whose initials and discriminants have no zero in the
/// projected solution set (decided by recursive decomposition).
struct SimplicityViolation {
  std::string what;
  Poly witness;
};
std::optional<SimplicityViolation> check_simple(const SimpleSystem& S,
                                                const DecomposeOptions& opts = {});
bool verify_simple(const SimpleSystem& S, const DecomposeOptions& opts = {});

/// Number of solutions of a zero-dimensional simple algebraic system:
/// the product of the leader degrees of the equations. Every declared
/// indeterminate must be an equation leader.
mpz_class count_solutions(const SimpleSystem& S);

/// First nonzero non-admissible prolongation remainder of an auto-reduced
/// equation set with Janet-complete leader sets, or nullopt when passive.
std::optional<Poly> passivity_remainder(const DiffRing& R, const std::vector<Poly>& eqs);

/// Equations of S lying in the subring generated by the dependents of
/// blocks block_index.. (0-based). Decides membership of the eliminated
/// ideal by reduction modulo these alone.
std::vector<Poly> eliminate(const SimpleSystem& S, std::uint32_t block_index);

/// The equations/inequations of a simple system viewed as an input system.
DiffSystem to_system(const SimpleSystem& S);

/// Moves a polynomial to a ring with the same symbol names (possibly a
/// different ranking / block structure).
Poly transport(const Poly& p, const DiffRing& from, const DiffRing& to);

}  // namespace thomas
