#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace thomas {

using VarId = std::uint32_t;

/// Exponents of the derivation monomial of a jet variable, one entry per
/// independent variable. The all-zero index is the indeterminate itself.
using MultiIndex = std::vector<std::uint32_t>;

enum class VarKind : std::uint8_t { Jet, Param, Indep };

struct VarInfo {
  VarKind kind;
  std::uint32_t dep = 0;  // Jet: index into dependents()
  MultiIndex index;       // Jet: derivation exponents, size = n_derivations()
  std::uint32_t sym = 0;  // Param/Indep: index into params()/indeps()
};

/// Total order on jet variables. Blocks of dependents are compared first
/// (earlier block wins), then derivation monomials by degree-reverse-lex
/// with d1 > d2 > ..., then the dependent's position.
struct RankingSpec {
  std::vector<std::vector<std::uint32_t>> blocks;  // dep indices, highest block first
};

// Degree-reverse-lexicographic comparison of derivation monomials:
// returns +1 if a > b, 0 if equal, -1 if a < b.
int degrevlex_cmp(const MultiIndex& a, const MultiIndex& b);

/// A differential polynomial ring: ground field Q(params)(indeps) with one
/// derivation per independent variable, dependents u_1..u_m, and a fixed
/// ranking. Jet variables are pooled lazily. Purely algebraic problems use
/// a ring with no independent variables.
class DiffRing {
 public:
  DiffRing(std::vector<std::string> indeps, std::vector<std::string> params,
           std::vector<std::string> deps,
           std::optional<RankingSpec> ranking = std::nullopt);

  std::size_t n_derivations() const { return indeps_.size(); }
  const std::vector<std::string>& indeps() const { return indeps_; }
  const std::vector<std::string>& params() const { return params_; }
  const std::vector<std::string>& dependents() const { return deps_; }
  const RankingSpec& ranking() const { return ranking_; }

  VarId param_var(std::uint32_t i) const { return param_base_ + i; }
  VarId indep_var(std::uint32_t i) const { return indep_base_ + i; }
  VarId jet_var(std::uint32_t dep, const MultiIndex& J) const;
  VarId jet_var(std::uint32_t dep) const;  // order zero

  std::optional<std::uint32_t> dep_index(const std::string& name) const;
  std::optional<VarId> symbol(const std::string& name) const;  // param or indep

  VarInfo info(VarId v) const {
    std::shared_lock lk(pool_mutex_);
    return infos_[v];
  }
  bool is_jet(VarId v) const { return info(v).kind == VarKind::Jet; }
  bool is_ground(VarId v) const { return info(v).kind != VarKind::Jet; }

  /// Derivative of a variable under d/d(indep j): for a jet bumps the
  /// multiindex; an independent variable differentiates to 1 (signalled by
  /// nullopt + unit flag via the second member); params to 0.
  struct VarDerivative {
    std::optional<VarId> var;  // set: derivative is that variable
    bool unit = false;         // set: derivative is the constant 1
  };
  VarDerivative derive_var(VarId v, std::uint32_t j) const;

  /// Ranking comparison of two jet variables: +1 / 0 / -1.
  int compare(VarId a, VarId b) const;

  /// Block index (0 = highest) of a jet variable's dependent.
  std::uint32_t block_of_dep(std::uint32_t dep) const { return dep_block_[dep]; }

  std::string var_name(VarId v) const;

  std::size_t n_vars() const { return infos_.size(); }

 private:
  std::vector<std::string> indeps_, params_, deps_;
  RankingSpec ranking_;
  std::vector<std::uint32_t> dep_block_;     // dep -> block index
  std::vector<std::uint32_t> dep_pos_;       // dep -> position inside block
  VarId param_base_ = 0, indep_base_ = 0;
  mutable std::shared_mutex pool_mutex_;
  mutable std::vector<VarInfo> infos_;
  mutable std::map<std::pair<std::uint32_t, MultiIndex>, VarId> jet_pool_;
};

}  // namespace thomas
