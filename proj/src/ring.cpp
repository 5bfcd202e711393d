#include "thomas/ring.hpp"

#include <algorithm>

namespace thomas {

int degrevlex_cmp(const MultiIndex& a, const MultiIndex& b) {
  std::uint64_t da = 0, db = 0;
  for (auto x : a) da += x;
  for (auto x : b) db += x;
  if (da != db) return da > db ? 1 : -1;
  // equal total degree: the one with the smaller exponent at the last
  // differing position is greater
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  }
  return 0;
}

DiffRing::DiffRing(std::vector<std::string> indeps, std::vector<std::string> params,
                   std::vector<std::string> deps, std::optional<RankingSpec> ranking)
    : indeps_(std::move(indeps)), params_(std::move(params)), deps_(std::move(deps)) {
  if (ranking) {
    ranking_ = std::move(*ranking);
  } else {
    ranking_.blocks.emplace_back();
    for (std::uint32_t k = 0; k < deps_.size(); ++k) ranking_.blocks.back().push_back(k);
  }
  dep_block_.assign(deps_.size(), 0);
  dep_pos_.assign(deps_.size(), 0);
  std::vector<bool> seen(deps_.size(), false);
  for (std::uint32_t b = 0; b < ranking_.blocks.size(); ++b) {
    for (std::uint32_t i = 0; i < ranking_.blocks[b].size(); ++i) {
      std::uint32_t k = ranking_.blocks[b][i];
      if (k >= deps_.size() || seen[k]) throw std::invalid_argument("bad ranking blocks");
      seen[k] = true;
      dep_block_[k] = b;
      dep_pos_[k] = i;
    }
  }
  for (bool s : seen)
    if (!s) throw std::invalid_argument("ranking blocks must cover all dependents");

  param_base_ = 0;
  for (std::uint32_t i = 0; i < params_.size(); ++i)
    infos_.push_back(VarInfo{VarKind::Param, 0, {}, i});
  indep_base_ = static_cast<VarId>(infos_.size());
  for (std::uint32_t i = 0; i < indeps_.size(); ++i)
    infos_.push_back(VarInfo{VarKind::Indep, 0, {}, i});
}

VarId DiffRing::jet_var(std::uint32_t dep, const MultiIndex& J) const {
  if (dep >= deps_.size()) throw std::invalid_argument("unknown dependent");
  if (J.size() != indeps_.size()) throw std::invalid_argument("bad multiindex length");
  auto key = std::make_pair(dep, J);
  {
    std::shared_lock lk(pool_mutex_);
    auto it = jet_pool_.find(key);
    if (it != jet_pool_.end()) return it->second;
  }
  std::unique_lock lk(pool_mutex_);
  auto it = jet_pool_.find(key);
  if (it != jet_pool_.end()) return it->second;
  VarId id = static_cast<VarId>(infos_.size());
  infos_.push_back(VarInfo{VarKind::Jet, dep, J, 0});
  jet_pool_.emplace(std::move(key), id);
  return id;
}

VarId DiffRing::jet_var(std::uint32_t dep) const {
  return jet_var(dep, MultiIndex(indeps_.size(), 0));
}

std::optional<std::uint32_t> DiffRing::dep_index(const std::string& name) const {
  for (std::uint32_t k = 0; k < deps_.size(); ++k)
    if (deps_[k] == name) return k;
  return std::nullopt;
}

std::optional<VarId> DiffRing::symbol(const std::string& name) const {
  for (std::uint32_t i = 0; i < params_.size(); ++i)
    if (params_[i] == name) return param_var(i);
  for (std::uint32_t i = 0; i < indeps_.size(); ++i)
    if (indeps_[i] == name) return indep_var(i);
  return std::nullopt;
}

DiffRing::VarDerivative DiffRing::derive_var(VarId v, std::uint32_t j) const {
  const VarInfo vi = info(v);
  switch (vi.kind) {
    case VarKind::Param:
      return {};
    case VarKind::Indep:
      return vi.sym == j ? VarDerivative{std::nullopt, true} : VarDerivative{};
    case VarKind::Jet: {
      MultiIndex J = vi.index;
      J[j] += 1;
      return {jet_var(vi.dep, J), false};
    }
  }
  return {};
}

int DiffRing::compare(VarId a, VarId b) const {
  if (a == b) return 0;
  const VarInfo ia = info(a);
  const VarInfo ib = info(b);
  if (ia.kind != VarKind::Jet || ib.kind != VarKind::Jet)
    throw std::invalid_argument("ranking compares jet variables only");
  std::uint32_t ba = dep_block_[ia.dep], bb = dep_block_[ib.dep];
  if (ba != bb) return ba < bb ? 1 : -1;
  int c = degrevlex_cmp(ia.index, ib.index);
  if (c != 0) return c;
  if (ia.dep == ib.dep) return 0;
  return dep_pos_[ia.dep] < dep_pos_[ib.dep] ? 1 : -1;
}

std::string DiffRing::var_name(VarId v) const {
  const VarInfo vi = info(v);
  switch (vi.kind) {
    case VarKind::Param:
      return params_[vi.sym];
    case VarKind::Indep:
      return indeps_[vi.sym];
    case VarKind::Jet: {
      std::string s = deps_[vi.dep];
      bool any = false;
      for (auto e : vi.index)
        if (e) any = true;
      if (!any) return s;
      s += '[';
      bool first = true;
      for (std::uint32_t j = 0; j < vi.index.size(); ++j) {
        for (std::uint32_t r = 0; r < vi.index[j]; ++r) {
          if (!first) s += ',';
          s += indeps_[j];
          first = false;
        }
      }
      s += ']';
      return s;
    }
  }
  return "?";
}

}  // namespace thomas
