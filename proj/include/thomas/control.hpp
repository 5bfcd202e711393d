#pragma once

#include <map>
#include <optional>
#include <string>

#include "thomas/engine.hpp"
#include "thomas/parser.hpp"
#include "thomas/system.hpp"

namespace thomas {

struct RankingMismatch : std::runtime_error {
  RankingMismatch() : std::runtime_error("ranking does not match the query's block shape") {}
};

enum class Verdict { Holds, Fails, Vacuous };

/// Result of a witness search for one variable against one simple system.
/// A holding verdict carries the witness polynomial and is re-verifiable:
/// member(H, witness), !member(H, leading coefficient), !member(H, d/dx).
struct WitnessCheck {
  Verdict verdict = Verdict::Fails;
  std::optional<Poly> witness;
  std::string detail;
  bool via_fallback = false;  // found by re-decomposing under a refined ranking
};

/// Dependents playing the role of parameters are excluded from
/// observability sweeps and allowed in witness coefficients.
struct QuerySpec {
  std::vector<std::uint32_t> y;       // dep indices of Y
  std::vector<std::uint32_t> z;       // dep indices of Z (inversion outputs)
  std::vector<std::uint32_t> params;  // dependents treated as parameters
};

/// Copies a ring, replacing the block structure.
std::shared_ptr<DiffRing> with_blocks(const DiffRing& base,
                                      std::vector<std::vector<std::uint32_t>> blocks);

/// Observability of x with respect to Y on one simple system. Requires a
/// ranking with U \ (Y u {x}) >> {x} >> Y (parameters below x). With
/// allow_fallback the witness search re-decomposes the system under the
/// refined ranking when no witness appears among the equations directly.
WitnessCheck check_observable(const SimpleSystem& H, std::uint32_t x_dep, const QuerySpec& q,
                              const DecomposeOptions& opts = {}, bool allow_fallback = true);

struct FlatSystemReport {
  bool flat = false;
  std::vector<Poly> y_relations;  // nonzero equations inside K{Y} (violations)
  std::map<std::uint32_t, WitnessCheck> observability;
};
struct FlatReport {
  std::vector<FlatSystemReport> per_system;
  bool any_flat = false;
};

/// Flat-output test of Y on every system of a decomposition computed under
/// a block ranking with U \ Y >> Y.
FlatReport check_flat_output(const Decomposition& D, const QuerySpec& q,
                             const DecomposeOptions& opts = {});

struct InvertSystemReport {
  bool invertible = false;
  std::map<std::uint32_t, WitnessCheck> per_output;  // z dep -> witness result
};
struct InvertReport {
  std::vector<InvertSystemReport> per_system;
  bool vacuous = false;  // Z empty
  bool any_invertible = false;
};

/// Inversion: for each z in Z exhibit a witness polynomial in z over K{Y}.
/// The decomposition must be computed under U \ (Y u Z) >> Z >> Y; when the
/// one-shot scan fails for some z the per-z refined ranking is tried.
InvertReport invert(const Decomposition& D, const QuerySpec& q,
                    const DecomposeOptions& opts = {});

/// Replaces sin/cos of declared dependents by fresh c<angle>/s<angle>
/// dependents with the generating relation c^2 + s^2 - 1 = 0; when the angle
/// still occurs in the system the derivative relations are added, otherwise
/// the angle is removed from the model.
SystemAst encode_trig(const SystemAst& ast);

}  // namespace thomas
