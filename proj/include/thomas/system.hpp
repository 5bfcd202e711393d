#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "thomas/janet.hpp"
#include "thomas/poly.hpp"
#include "thomas/ring.hpp"

namespace thomas {

/// Input system: equations p = 0 and inequations q != 0 over a ring with a
/// fixed ranking. Works for algebraic systems (no derivations) as well.
struct DiffSystem {
  std::shared_ptr<const DiffRing> ring;
  std::vector<Poly> equations;
  std::vector<Poly> inequations;
};

/// One simple system of a decomposition: triangular, certified initials and
/// discriminants, passive equations with Janet-complete leader sets, fully
/// reduced inequations.
struct SimpleSystem {
  std::shared_ptr<const DiffRing> ring;

  struct Equation {
    Poly p;
    VarId ld;
    std::vector<bool> admissible;  // per derivation; empty for algebraic rings
  };
  struct Inequation {
    Poly p;
    VarId ld;
  };

  std::vector<Equation> equations;     // descending leader
  std::vector<Inequation> inequations; // descending leader
  std::vector<std::uint32_t> path;     // branch-creation stamp

  std::vector<Poly> equation_polys() const {
    std::vector<Poly> out;
    for (const auto& e : equations) out.push_back(e.p);
    return out;
  }
};

struct DecomposeOptions {
  /// Split equations arising as reduction remainders along their
  /// irreducible-over-Q factors (the convenient-but-not-necessary splits of
  /// the worked examples).
  bool factor = false;
  int parallel = 1;
  std::uint64_t max_steps = 5'000'000;  // safety valve per decomposition
};

struct Decomposition {
  std::vector<SimpleSystem> systems;
  std::uint64_t dropped_branches = 0;  // inconsistent branches, diagnostics
};

}  // namespace thomas
