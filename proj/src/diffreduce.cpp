#include "thomas/diffreduce.hpp"

#include <algorithm>

namespace thomas {

EqView make_eq_view(const DiffRing& R, const Poly& p) {
  EqView v;
  v.p = p;
  v.ld = leader_or_throw(R, p);
  auto info = R.info(v.ld);
  v.dep = info.dep;
  v.theta = info.index;
  v.deg = p.deg(v.ld);
  return v;
}

namespace {

bool theta_divides(const MultiIndex& a, const MultiIndex& b) {
  for (std::size_t j = 0; j < a.size(); ++j)
    if (a[j] > b[j]) return false;
  return true;
}

MultiIndex theta_div(const MultiIndex& b, const MultiIndex& a) {
  MultiIndex d(b.size());
  for (std::size_t j = 0; j < b.size(); ++j) d[j] = b[j] - a[j];
  return d;
}

bool theta_is_zero(const MultiIndex& t) {
  for (auto e : t)
    if (e) return false;
  return true;
}

// does the policy admit prolonging eqs[i] by theta?
bool prolongation_allowed(const ProlongPolicy& policy, const EqView& e, const MultiIndex& theta) {
  if (theta_is_zero(theta)) return true;
  if (!policy.allow_derivatives) return false;
  if (!policy.tables) return true;
  auto it = policy.tables->find(e.dep);
  if (it == policy.tables->end()) return false;
  const JanetAssignment& a = it->second;
  std::size_t row = a.find(e.theta);
  for (std::size_t j = 0; j < theta.size(); ++j)
    if (theta[j] > 0 && !a.admissible[row][j]) return false;
  return true;
}

struct Candidate {
  VarId var;
  std::size_t eq;
  MultiIndex theta;
};

}  // namespace

std::map<std::uint32_t, JanetAssignment> leader_tables(const DiffRing& R,
                                                       const std::vector<EqView>& eqs) {
  std::map<std::uint32_t, std::vector<MultiIndex>> monos;
  for (const auto& e : eqs) monos[e.dep].push_back(e.theta);
  std::map<std::uint32_t, JanetAssignment> out;
  for (auto& [dep, M] : monos) out.emplace(dep, janet_assign(std::move(M)));
  return out;
}

Reduction reduce(const DiffRing& R, const Poly& p, const std::vector<EqView>& eqs,
                 const ProlongPolicy& policy) {
  Reduction out;
  out.rem = p;
  out.multiplier = Poly(mpq_class(1));
  if (eqs.empty()) return out;

  while (!out.rem.is_zero()) {
    // find the highest-ranked reducible jet variable of the remainder
    std::vector<VarId> vs;
    out.rem.vars(vs);
    std::optional<Candidate> best;
    for (VarId w : vs) {
      if (!R.is_jet(w)) continue;
      auto wi = R.info(w);
      std::optional<Candidate> cand;
      for (std::size_t i = 0; i < eqs.size(); ++i) {
        const EqView& e = eqs[i];
        if (e.dep != wi.dep || !theta_divides(e.theta, wi.index)) continue;
        MultiIndex theta = theta_div(wi.index, e.theta);
        if (theta_is_zero(theta)) {
          if (out.rem.deg(w) < e.deg) continue;
        }
        if (!prolongation_allowed(policy, e, theta)) continue;
        // prefer the reducer with the highest leader
        if (!cand || R.compare(e.ld, eqs[cand->eq].ld) > 0)
          cand = Candidate{w, i, std::move(theta)};
      }
      if (!cand) continue;
      if (!best || R.compare(w, best->var) > 0) best = std::move(cand);
    }
    if (!best) break;

    const EqView& e = eqs[best->eq];
    Poly divisor = theta_is_zero(best->theta) ? e.p : differentiate(R, e.p, best->theta);
    PseudoDiv d = pseudo_divide(out.rem, divisor, best->var);
    // multiplier * p == sum(uses) + rem is maintained by scaling everything
    out.multiplier = d.mult * out.multiplier;
    for (auto& u : out.uses) u.cofactor = d.mult * u.cofactor;
    out.uses.push_back(ReductionUse{best->eq, best->theta, d.quo});
    out.rem = d.rem;
    out.steps += d.steps;
  }
  return out;
}

bool Reduction::verify(const DiffRing& R, const Poly& p, const std::vector<EqView>& eqs) const {
  Poly acc = multiplier * p - rem;
  for (const auto& u : uses) {
    Poly g = theta_is_zero(u.theta) ? eqs[u.eq].p : differentiate(R, eqs[u.eq].p, u.theta);
    acc -= u.cofactor * g;
  }
  return acc.is_zero();
}

}  // namespace thomas
