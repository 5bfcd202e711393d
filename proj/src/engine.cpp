#include "thomas/engine.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <deque>
#include <mutex>
#include <thread>

namespace thomas {

namespace {

enum class Cn : std::uint8_t { Eq, Ineq };
enum class Origin : std::uint8_t { Input, Remainder, CaseSplit, Completion };

struct Constraint {
  Poly p;
  Cn kind;
  Origin origin;
  std::uint64_t seq = 0;
};

struct Member {
  Poly p;
  Cn kind;
  VarId ld;
  std::uint32_t deg;
};

struct Work {
  std::vector<Member> T;
  std::vector<Constraint> Q;
  std::vector<std::uint32_t> path;
  std::uint32_t next_child = 0;
  std::uint64_t seq = 0;
};

struct Ctx {
  const DiffRing& R;
  DecomposeOptions opts;
  std::atomic<std::uint64_t> steps{0};
  std::atomic<std::uint64_t> dropped{0};

  void tick() {
    if (++steps > opts.max_steps) throw std::runtime_error("decompose: step budget exceeded");
  }
};

Work fork(Work& w) {
  Work c = w;
  c.path.push_back(w.next_child++);
  c.next_child = 0;
  return c;
}

std::vector<EqView> eq_views(const DiffRing& R, const Work& w) {
  std::vector<EqView> out;
  for (const auto& m : w.T)
    if (m.kind == Cn::Eq) out.push_back(make_eq_view(R, m.p));
  return out;
}

int find_member(const Work& w, VarId v) {
  for (std::size_t i = 0; i < w.T.size(); ++i)
    if (w.T[i].ld == v) return static_cast<int>(i);
  return -1;
}

void queue(Work& w, Poly p, Cn kind, Origin origin) {
  p = p.canonical();
  for (const auto& c : w.Q)
    if (c.kind == kind && c.p == p) return;
  w.Q.push_back(Constraint{std::move(p), kind, origin, w.seq++});
}

// zero-set-preserving fragmentation of an inequation: ground content and
// unit factors dropped, strictly lower-leader content split off as separate
// inequations, leader-repeated factors collapsed. Factors sharing the
// original leader stay merged in one piece (condition b).
std::vector<Poly> ineq_pieces(const DiffRing& R, const Poly& p) {
  std::vector<Poly> out;
  std::vector<Poly> work{remove_ground_content(R, p)};
  while (!work.empty()) {
    Poly f = work.back();
    work.pop_back();
    if (f.is_constant()) continue;
    auto lv = leader(R, f);
    if (!lv) continue;  // ground: a unit
    VarId v = *lv;
    // pull the leader's power out of a common monomial factor, drop the rest
    // of the monomial into separate lower-leader inequations
    std::uint32_t vmin = f.deg(v);
    for (const auto& [m, c] : f.terms()) vmin = std::min(vmin, m.deg(v));
    Poly piece{mpq_class(1)};
    if (vmin > 0) {
      f = exact_div_or_throw(f, Poly::var(v, vmin));
      piece = Poly::var(v);
      if (f.is_constant() || f.deg(v) == 0) {
        // remaining part has lower leader: recurse on it
        if (!f.is_constant()) work.push_back(f);
        out.push_back(piece);
        continue;
      }
    }
    Poly c = content(f, v);
    if (!c.is_constant()) {
      work.push_back(c);
      f = exact_div_or_throw(f, c);
    }
    Poly sf = squarefree_part(f, v);
    piece = piece * sf;
    out.push_back(squarefree_part(piece, v).canonical());
  }
  std::sort(out.begin(), out.end(), [](const Poly& a, const Poly& b) {
    return Poly::cmp(a, b) > 0;
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

class Engine {
 public:
  Engine(Ctx& ctx) : ctx_(ctx), R(ctx.R) {}

  // Runs one unit of processing of w: either finishes it (emits into
  // `emitted` / drops it) or splits it (children appended to `children`).
  void process(Work w, std::vector<Work>& children, std::vector<SimpleSystem>& emitted);

 private:
  Ctx& ctx_;
  const DiffRing& R;

  enum class QState { Alive, Dead };
  QState normalize_queue(Work& w);
  bool select_next(Work& w, Constraint& out);

  // insertion pipeline; appends successor works to out (possibly none)
  void stage_normalize(Work w, Poly p, Cn kind, Origin origin, std::vector<Work>& out);
  void stage_init(Work w, Poly p, Cn kind, Origin origin, std::vector<Work>& out);
  void stage_pairs(Work w, Poly p, Cn kind, Origin origin, std::vector<Work>& out);
  void stage_disc(Work w, Poly p, Cn kind, Origin origin, std::vector<Work>& out);
  void stage_place(Work w, Poly p, Cn kind, std::vector<Work>& out);

  struct ChainOutcome {
    enum Kind { ReducedToZero, GroundNonzero, NonGroundFinal } kind;
    Poly g;        // last member of positive degree (conditional gcd)
    Poly r_final;  // v-free final member times removed contents
  };
  ChainOutcome run_chain(Work& w, Poly f0, Poly f1, VarId v, const Poly& requeue_p,
                         Cn requeue_kind, Origin requeue_origin, std::vector<Work>& out);

  Poly reduce_mod(const Work& w, const Poly& p) {
    return reduce(R, p, eq_views(R, w), ProlongPolicy{true, nullptr}).rem;
  }

  // diff phase; returns true if new constraints were queued (continue main
  // loop), false when the system is ready to emit
  bool diff_phase(Work& w);

  void emit(Work& w, std::vector<SimpleSystem>& emitted);
};

Engine::QState Engine::normalize_queue(Work& w) {
  std::vector<Constraint> keep;
  // members can change mid-loop only via insertions, which happen elsewhere;
  // reduce against the current triangular set
  auto views = eq_views(R, w);
  for (auto& c : w.Q) {
    ctx_.tick();
    Reduction red = reduce(R, c.p, views, ProlongPolicy{true, nullptr});
    Poly p = red.rem.canonical();
    if (red.steps > 0 && p != c.p) {
      c.p = p;
      c.origin = Origin::Remainder;
    }
    if (c.p.is_zero()) {
      if (c.kind == Cn::Ineq) return QState::Dead;  // 0 != 0
      continue;                                     // 0 = 0
    }
    if (is_ground(R, c.p)) {
      if (c.kind == Cn::Eq) return QState::Dead;  // nonzero ground = 0
      continue;                                   // ground nonzero != 0: trivially true
    }
    keep.push_back(std::move(c));
  }
  w.Q = std::move(keep);
  return QState::Alive;
}

bool Engine::select_next(Work& w, Constraint& out) {
  if (w.Q.empty()) return false;
  std::size_t best = 0;
  VarId bl = leader_or_throw(R, w.Q[0].p);
  std::uint32_t bd = w.Q[0].p.deg(bl);
  for (std::size_t i = 1; i < w.Q.size(); ++i) {
    VarId l = leader_or_throw(R, w.Q[i].p);
    std::uint32_t d = w.Q[i].p.deg(l);
    int c = R.compare(l, bl);
    bool better = false;
    if (c != 0) {
      better = c < 0;  // smaller leader first
    } else if (d != bd) {
      better = d < bd;
    } else if (w.Q[i].kind != w.Q[best].kind) {
      better = w.Q[i].kind == Cn::Eq;  // equations preferred
    } else {
      better = w.Q[i].seq < w.Q[best].seq;
    }
    if (better) {
      best = i;
      bl = l;
      bd = d;
    }
  }
  out = std::move(w.Q[best]);
  w.Q.erase(w.Q.begin() + best);
  return true;
}

void Engine::process(Work w, std::vector<Work>& children, std::vector<SimpleSystem>& emitted) {
  while (true) {
    ctx_.tick();
    if (normalize_queue(w) == QState::Dead) {
      ctx_.dropped++;
      return;
    }
    if (w.Q.empty()) {
      if (R.n_derivations() > 0 && diff_phase(w)) continue;
      emit(w, emitted);
      return;
    }
    Constraint c;
    select_next(w, c);
    std::vector<Work> next;
    stage_normalize(std::move(w), std::move(c.p), c.kind, c.origin, next);
    if (next.empty()) {
      ctx_.dropped++;  // every branch died during insertion
      return;
    }
    if (next.size() == 1) {
      w = std::move(next.front());
      continue;
    }
    for (auto& n : next) children.push_back(std::move(n));
    return;
  }
}

void Engine::stage_normalize(Work w, Poly p, Cn kind, Origin origin, std::vector<Work>& out) {
  p = remove_ground_content(R, p);
  if (kind == Cn::Eq) {
    VarId v = leader_or_throw(R, p);
    p = squarefree_part(p, v).canonical();
    if (ctx_.opts.factor && origin != Origin::CaseSplit && origin != Origin::Completion) {
      auto fs = factor_split(R, p);
      if (fs.size() >= 2) {
        // f1 f2 ... = 0 splits into {f1 = 0}, {f2 = 0, f1 != 0}, ...
        for (std::size_t i = 0; i < fs.size(); ++i) {
          Work c = fork(w);
          queue(c, fs[i], Cn::Eq, origin);
          for (std::size_t j = 0; j < i; ++j) queue(c, fs[j], Cn::Ineq, Origin::CaseSplit);
          out.push_back(std::move(c));
        }
        return;
      }
      if (fs.size() == 1) p = fs[0];
    }
  } else {
    auto pieces = ineq_pieces(R, p);
    if (pieces.empty()) {
      out.push_back(std::move(w));  // inequation trivially true
      return;
    }
    if (pieces.size() > 1 || pieces[0] != p.canonical()) {
      for (auto& piece : pieces) queue(w, piece, Cn::Ineq, origin);
      out.push_back(std::move(w));
      return;
    }
    p = pieces[0];
  }
  stage_init(std::move(w), std::move(p), kind, origin, out);
}

void Engine::stage_init(Work w, Poly p, Cn kind, Origin origin, std::vector<Work>& out) {
  Poly iota = initial(R, p);
  if (!is_ground(R, iota)) {
    Poly red = reductum(R, p);
    if (!(kind == Cn::Ineq && red.is_zero())) {
      Work degenerate = fork(w);
      queue(degenerate, iota, Cn::Eq, Origin::CaseSplit);
      if (!red.is_zero()) queue(degenerate, red, kind, Origin::CaseSplit);
      out.push_back(std::move(degenerate));
    }
    queue(w, iota, Cn::Ineq, Origin::CaseSplit);
  }
  stage_pairs(std::move(w), std::move(p), kind, origin, out);
}

void Engine::stage_pairs(Work w, Poly p, Cn kind, Origin origin, std::vector<Work>& out) {
  VarId v = leader_or_throw(R, p);
  std::uint32_t d = p.deg(v);
  int mi = find_member(w, v);
  if (mi < 0) {
    stage_disc(std::move(w), std::move(p), kind, origin, out);
    return;
  }
  Member m = w.T[mi];

  if (kind == Cn::Eq && m.kind == Cn::Eq) {
    if (d >= m.deg) {
      PseudoDiv pd = pseudo_divide(p, m.p, v);
      queue(w, pd.rem, Cn::Eq, Origin::Remainder);
      out.push_back(std::move(w));
    } else {
      w.T.erase(w.T.begin() + mi);
      queue(w, m.p, Cn::Eq, Origin::Remainder);
      stage_disc(std::move(w), std::move(p), kind, origin, out);
    }
    return;
  }

  if (kind == Cn::Eq && m.kind == Cn::Ineq) {
    if (d <= m.deg) {
      // equation divides down the inequation; the reduced inequation keeps
      // the exclusion on the fiber
      PseudoDiv pd = pseudo_divide(m.p, p, v);
      w.T.erase(w.T.begin() + mi);
      queue(w, pd.rem, Cn::Ineq, Origin::Remainder);
      stage_disc(std::move(w), std::move(p), kind, origin, out);
      return;
    }
    ChainOutcome co = run_chain(w, p, m.p, v, p, kind, origin, out);
    switch (co.kind) {
      case ChainOutcome::ReducedToZero: {
        // common factor g: equation roots inside the inequation's zero set
        // are dropped from p
        PseudoDiv pd = pseudo_divide(p, co.g, v);
        if (!pd.rem.is_zero()) queue(w, pd.rem, Cn::Eq, Origin::CaseSplit);
        queue(w, pd.quo, kind, origin);
        out.push_back(std::move(w));
        return;
      }
      case ChainOutcome::GroundNonzero:
        // coprime: the inequation is implied by the equation
        w.T.erase(w.T.begin() + mi);
        stage_disc(std::move(w), std::move(p), kind, origin, out);
        return;
      case ChainOutcome::NonGroundFinal: {
        Work degenerate = fork(w);
        queue(degenerate, co.r_final, Cn::Eq, Origin::CaseSplit);
        queue(degenerate, p, kind, origin);
        out.push_back(std::move(degenerate));
        queue(w, co.r_final, Cn::Ineq, Origin::CaseSplit);
        w.T.erase(w.T.begin() + mi);
        stage_disc(std::move(w), std::move(p), kind, origin, out);
        return;
      }
    }
  }

  if (kind == Cn::Ineq && m.kind == Cn::Eq) {
    if (d >= m.deg) {
      PseudoDiv pd = pseudo_divide(p, m.p, v);
      queue(w, pd.rem, Cn::Ineq, Origin::Remainder);
      out.push_back(std::move(w));
      return;
    }
    ChainOutcome co = run_chain(w, m.p, p, v, p, kind, origin, out);
    switch (co.kind) {
      case ChainOutcome::ReducedToZero: {
        PseudoDiv pd = pseudo_divide(m.p, co.g, v);
        w.T.erase(w.T.begin() + mi);
        if (!pd.rem.is_zero()) queue(w, pd.rem, Cn::Eq, Origin::CaseSplit);
        queue(w, pd.quo, Cn::Eq, Origin::Remainder);
        queue(w, p, Cn::Ineq, origin);
        out.push_back(std::move(w));
        return;
      }
      case ChainOutcome::GroundNonzero:
        // coprime: inequation implied, dropped
        out.push_back(std::move(w));
        return;
      case ChainOutcome::NonGroundFinal: {
        Work degenerate = fork(w);
        queue(degenerate, co.r_final, Cn::Eq, Origin::CaseSplit);
        queue(degenerate, p, kind, origin);
        out.push_back(std::move(degenerate));
        queue(w, co.r_final, Cn::Ineq, Origin::CaseSplit);
        out.push_back(std::move(w));  // inequation implied under r != 0
        return;
      }
    }
  }

  // inequation meets inequation: same zero condition as the product
  w.T.erase(w.T.begin() + mi);
  queue(w, p * m.p, Cn::Ineq, Origin::Remainder);
  out.push_back(std::move(w));
}

void Engine::stage_disc(Work w, Poly p, Cn kind, Origin origin, std::vector<Work>& out) {
  VarId v = leader_or_throw(R, p);
  if (p.deg(v) < 2) {
    stage_place(std::move(w), std::move(p), kind, out);
    return;
  }
  ChainOutcome co = run_chain(w, p, p.derivative(v), v, p, kind, origin, out);
  switch (co.kind) {
    case ChainOutcome::ReducedToZero: {
      // repeated factor on this branch: divide it out
      PseudoDiv pd = pseudo_divide(p, co.g, v);
      if (!pd.rem.is_zero()) queue(w, pd.rem, Cn::Eq, Origin::CaseSplit);
      queue(w, pd.quo, kind, origin);
      out.push_back(std::move(w));
      return;
    }
    case ChainOutcome::GroundNonzero:
      stage_place(std::move(w), std::move(p), kind, out);
      return;
    case ChainOutcome::NonGroundFinal: {
      Work degenerate = fork(w);
      queue(degenerate, co.r_final, Cn::Eq, Origin::CaseSplit);
      queue(degenerate, p, kind, origin);
      out.push_back(std::move(degenerate));
      queue(w, co.r_final, Cn::Ineq, Origin::CaseSplit);
      stage_place(std::move(w), std::move(p), kind, out);
      return;
    }
  }
}

Engine::ChainOutcome Engine::run_chain(Work& w, Poly f0, Poly f1, VarId v, const Poly& requeue_p,
                                       Cn requeue_kind, Origin requeue_origin,
                                       std::vector<Work>& out) {
  Poly extra(mpq_class(1));
  while (true) {
    ctx_.tick();
    PseudoDiv pd = pseudo_divide(f0, f1, v);
    Poly r = reduce_mod(w, pd.rem).canonical();
    if (r.is_zero()) return ChainOutcome{ChainOutcome::ReducedToZero, f1, Poly()};
    if (r.deg(v) >= 1) {
      Poly c = content(r, v);
      if (!c.is_constant()) {
        extra = extra * c;
        r = exact_div_or_throw(r, c).canonical();
      }
      Poly iota = r.coeff_of(v, r.deg(v));
      if (!is_ground(R, iota)) {
        Work degenerate = fork(w);
        queue(degenerate, iota, Cn::Eq, Origin::CaseSplit);
        queue(degenerate, requeue_p, requeue_kind, requeue_origin);
        out.push_back(std::move(degenerate));
        queue(w, iota, Cn::Ineq, Origin::CaseSplit);
      }
      f0 = std::move(f1);
      f1 = std::move(r);
      continue;
    }
    // v-free final member
    Poly total = remove_ground_content(R, r * extra);
    if (is_ground(R, total)) return ChainOutcome{ChainOutcome::GroundNonzero, f1, Poly()};
    return ChainOutcome{ChainOutcome::NonGroundFinal, f1, total};
  }
}

void Engine::stage_place(Work w, Poly p, Cn kind, std::vector<Work>& out) {
  VarId v = leader_or_throw(R, p);
  Member m{p.canonical(), kind, v, p.deg(v)};
  w.T.push_back(m);
  if (kind == Cn::Eq) {
    // requeue members that became reducible by the new equation
    auto vi = R.info(v);
    std::vector<std::size_t> requeue;
    for (std::size_t i = 0; i + 1 < w.T.size(); ++i) {
      const Member& r = w.T[i];
      bool reducible = false;
      std::vector<VarId> vs;
      r.p.vars(vs);
      for (VarId x : vs) {
        if (!R.is_jet(x)) continue;
        auto xi = R.info(x);
        if (xi.dep != vi.dep) continue;
        bool geq = true, equal = true;
        for (std::size_t j = 0; j < xi.index.size(); ++j) {
          if (xi.index[j] < vi.index[j]) geq = false;
          if (xi.index[j] != vi.index[j]) equal = false;
        }
        if (!geq) continue;
        if (equal ? r.p.deg(x) >= m.deg : true) {
          reducible = true;
          break;
        }
      }
      if (reducible) requeue.push_back(i);
    }
    for (auto it = requeue.rbegin(); it != requeue.rend(); ++it) {
      queue(w, w.T[*it].p, w.T[*it].kind, Origin::Remainder);
      w.T.erase(w.T.begin() + *it);
    }
  }
  out.push_back(std::move(w));
}

bool Engine::diff_phase(Work& w) {
  // (a) Janet completion of the leader monomial sets, prolonged equations
  // become members
  while (true) {
    std::map<std::uint32_t, std::vector<std::size_t>> by_dep;
    for (std::size_t i = 0; i < w.T.size(); ++i)
      if (w.T[i].kind == Cn::Eq) by_dep[R.info(w.T[i].ld).dep].push_back(i);
    bool added = false;
    for (auto& [dep, idxs] : by_dep) {
      std::vector<MultiIndex> M;
      for (auto i : idxs) M.push_back(R.info(w.T[i].ld).index);
      auto comp = janet_complete(M);
      for (const auto& step : comp.steps) {
        // find the member whose leader monomial is the parent
        Poly base;
        for (auto i : idxs)
          if (R.info(w.T[i].ld).index == step.parent) base = w.T[i].p;
        if (base.is_zero()) {
          // parent added earlier in this loop: search all members
          for (const auto& mem : w.T)
            if (mem.kind == Cn::Eq && R.info(mem.ld).dep == dep &&
                R.info(mem.ld).index == step.parent)
              base = mem.p;
        }
        Poly prolonged = differentiate(R, base, step.deriv);
        VarId ld = leader_or_throw(R, prolonged);
        w.T.push_back(Member{prolonged.canonical(), Cn::Eq, ld, prolonged.deg(ld)});
        added = true;
      }
    }
    if (!added) break;
  }

  auto views = eq_views(R, w);
  if (views.empty()) return false;
  auto tables = leader_tables(R, views);
  ProlongPolicy janet_policy{true, &tables};

  // (b) passivity: non-admissible prolongations must reduce to zero
  struct Check {
    std::size_t eq;
    std::uint32_t j;
    VarId target;
  };
  std::vector<Check> checks;
  for (std::size_t i = 0; i < views.size(); ++i) {
    const auto& a = tables.at(views[i].dep);
    std::size_t row = a.find(views[i].theta);
    for (std::uint32_t j = 0; j < R.n_derivations(); ++j) {
      if (a.admissible[row][j]) continue;
      MultiIndex J = views[i].theta;
      J[j] += 1;
      checks.push_back(Check{i, j, R.jet_var(views[i].dep, J)});
    }
  }
  std::sort(checks.begin(), checks.end(),
            [this](const Check& a, const Check& b) { return R.compare(a.target, b.target) < 0; });
  for (const auto& ck : checks) {
    ctx_.tick();
    Poly dp = differentiate(R, views[ck.eq].p, ck.j);
    Reduction red = reduce(R, dp, views, janet_policy);
    if (!red.rem.is_zero()) {
      queue(w, red.rem, Cn::Eq, Origin::Remainder);
      return true;
    }
  }

  // (c) inequations must equal their own full remainders
  for (std::size_t i = 0; i < w.T.size(); ++i) {
    if (w.T[i].kind != Cn::Ineq) continue;
    Reduction red = reduce(R, w.T[i].p, views, janet_policy);
    if (red.steps > 0 && red.rem.canonical() != w.T[i].p) {
      Poly rem = red.rem;
      w.T.erase(w.T.begin() + i);
      queue(w, rem, Cn::Ineq, Origin::Remainder);
      return true;
    }
  }
  return false;
}

void Engine::emit(Work& w, std::vector<SimpleSystem>& emitted) {
  SimpleSystem s;
  s.path = w.path;
  std::stable_sort(w.T.begin(), w.T.end(),
                   [this](const Member& a, const Member& b) { return R.compare(a.ld, b.ld) > 0; });
  std::map<std::uint32_t, JanetAssignment> tables;
  if (R.n_derivations() > 0) {
    auto views = eq_views(R, w);
    if (!views.empty()) tables = leader_tables(R, views);
  }
  for (const auto& m : w.T) {
    if (m.kind == Cn::Eq) {
      SimpleSystem::Equation e;
      e.p = m.p;
      e.ld = m.ld;
      if (!tables.empty()) {
        auto info = R.info(m.ld);
        const auto& a = tables.at(info.dep);
        e.admissible.assign(R.n_derivations(), false);
        std::size_t row = a.find(info.index);
        for (std::uint32_t j = 0; j < R.n_derivations(); ++j)
          e.admissible[j] = a.admissible[row][j];
      }
      s.equations.push_back(std::move(e));
    } else {
      s.inequations.push_back(SimpleSystem::Inequation{m.p, m.ld});
    }
  }
  emitted.push_back(std::move(s));
}

}  // namespace

Decomposition decompose(const DiffSystem& S, const DecomposeOptions& opts) {
  Ctx ctx{*S.ring, opts};
  Work root;
  for (const auto& p : S.equations) queue(root, p, Cn::Eq, Origin::Input);
  for (const auto& q : S.inequations) queue(root, q, Cn::Ineq, Origin::Input);

  std::deque<Work> todo;
  todo.push_back(std::move(root));
  std::vector<SimpleSystem> results;

  int n_threads = std::max(1, opts.parallel);
  if (n_threads == 1) {
    Engine eng(ctx);
    while (!todo.empty()) {
      Work w = std::move(todo.front());
      todo.pop_front();
      std::vector<Work> children;
      eng.process(std::move(w), children, results);
      for (auto& c : children) todo.push_back(std::move(c));
    }
  } else {
    std::mutex mu;
    std::condition_variable cv;
    int active = 0;
    std::exception_ptr err;
    auto worker = [&]() {
      Engine eng(ctx);
      std::unique_lock lk(mu);
      while (true) {
        cv.wait(lk, [&] { return !todo.empty() || active == 0 || err; });
        if (err || (todo.empty() && active == 0)) return;
        if (todo.empty()) continue;
        Work w = std::move(todo.front());
        todo.pop_front();
        ++active;
        lk.unlock();
        std::vector<Work> children;
        std::vector<SimpleSystem> emitted;
        try {
          eng.process(std::move(w), children, emitted);
        } catch (...) {
          lk.lock();
          err = std::current_exception();
          --active;
          cv.notify_all();
          return;
        }
        lk.lock();
        for (auto& c : children) todo.push_back(std::move(c));
        for (auto& e : emitted) results.push_back(std::move(e));
        --active;
        cv.notify_all();
      }
    };
    std::vector<std::thread> pool;
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
  }

  std::sort(results.begin(), results.end(), [](const SimpleSystem& a, const SimpleSystem& b) {
    return a.path < b.path;
  });
  Decomposition out;
  for (auto& s : results) {
    s.ring = S.ring;
    out.systems.push_back(std::move(s));
  }
  out.dropped_branches = ctx.dropped.load();
  return out;
}

Reduction member_reduction(const SimpleSystem& S, const Poly& p) {
  const DiffRing& R = *S.ring;
  std::vector<EqView> views;
  for (const auto& e : S.equations) views.push_back(make_eq_view(R, e.p));
  if (views.empty()) {
    Reduction r;
    r.rem = p;
    r.multiplier = Poly(mpq_class(1));
    return r;
  }
  auto tables = leader_tables(R, views);
  return reduce(R, p, views, ProlongPolicy{true, &tables});
}

bool member(const SimpleSystem& S, const Poly& p) {
  return member_reduction(S, p).rem.is_zero();
}

bool member_radical(const std::vector<SimpleSystem>& parts, const Poly& p) {
  for (const auto& s : parts)
    if (!member(s, p)) return false;
  return true;
}

DiffSystem to_system(const SimpleSystem& S) {
  DiffSystem out;
  out.ring = S.ring;
  for (const auto& e : S.equations) out.equations.push_back(e.p);
  for (const auto& q : S.inequations) out.inequations.push_back(q.p);
  return out;
}

bool are_disjoint(const SimpleSystem& a, const SimpleSystem& b, const DecomposeOptions& opts) {
  DiffSystem u = to_system(a);
  DiffSystem vb = to_system(b);
  u.equations.insert(u.equations.end(), vb.equations.begin(), vb.equations.end());
  u.inequations.insert(u.inequations.end(), vb.inequations.begin(), vb.inequations.end());
  DecomposeOptions o = opts;
  o.parallel = 1;
  return decompose(u, o).systems.empty();
}

std::optional<SimplicityViolation> check_simple(const SimpleSystem& S,
                                                const DecomposeOptions& opts) {
  const DiffRing& R = *S.ring;
  struct Entry {
    Poly p;
    VarId ld;
  };
  std::vector<Entry> all;
  for (const auto& e : S.equations) all.push_back({e.p, e.ld});
  for (const auto& q : S.inequations) all.push_back({q.p, q.ld});
  for (const auto& e : all) {
    if (is_ground(R, e.p)) return SimplicityViolation{"ground member", e.p};
    if (leader_or_throw(R, e.p) != e.ld) return SimplicityViolation{"leader mismatch", e.p};
  }
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j)
      if (all[i].ld == all[j].ld) return SimplicityViolation{"repeated leader", all[i].p};

  DecomposeOptions o = opts;
  o.parallel = 1;
  for (const auto& e : all) {
    // lower subsystem: members with leader strictly below ld(e)
    DiffSystem lower;
    lower.ring = S.ring;
    for (const auto& f : S.equations)
      if (R.compare(f.ld, e.ld) < 0) lower.equations.push_back(f.p);
    for (const auto& q : S.inequations)
      if (R.compare(q.ld, e.ld) < 0) lower.inequations.push_back(q.p);

    Poly init = initial(R, e.p);
    if (!is_ground(R, init)) {
      DiffSystem bad = lower;
      bad.equations.push_back(init);
      if (!decompose(bad, o).systems.empty())
        return SimplicityViolation{"initial vanishes on projection", e.p};
    }
    if (e.p.deg(e.ld) >= 2) {
      Poly disc = discriminant(R, e.p);
      if (is_ground(R, disc)) {
        if (disc.is_zero()) return SimplicityViolation{"zero discriminant", e.p};
      } else {
        DiffSystem bad = lower;
        bad.equations.push_back(disc);
        if (!decompose(bad, o).systems.empty())
          return SimplicityViolation{"discriminant vanishes on projection", e.p};
      }
    }
  }
  return std::nullopt;
}

bool verify_simple(const SimpleSystem& S, const DecomposeOptions& opts) {
  return !check_simple(S, opts).has_value();
}

mpz_class count_solutions(const SimpleSystem& S) {
  const DiffRing& R = *S.ring;
  std::vector<bool> covered(R.dependents().size(), false);
  mpz_class n = 1;
  for (const auto& e : S.equations) {
    auto info = R.info(e.ld);
    for (auto x : info.index)
      if (x) throw NotZeroDimensional();  // proper jet leader: not algebraic
    covered[info.dep] = true;
    n *= e.p.deg(e.ld);
  }
  for (bool c : covered)
    if (!c) throw NotZeroDimensional();
  return n;
}

std::optional<Poly> passivity_remainder(const DiffRing& R, const std::vector<Poly>& eqs) {
  std::vector<EqView> views;
  for (const auto& p : eqs) views.push_back(make_eq_view(R, p));
  if (views.empty()) return std::nullopt;
  auto tables = leader_tables(R, views);
  ProlongPolicy policy{true, &tables};
  struct Check {
    std::size_t eq;
    std::uint32_t j;
    VarId target;
  };
  std::vector<Check> checks;
  for (std::size_t i = 0; i < views.size(); ++i) {
    const auto& a = tables.at(views[i].dep);
    std::size_t row = a.find(views[i].theta);
    for (std::uint32_t j = 0; j < R.n_derivations(); ++j) {
      if (a.admissible[row][j]) continue;
      MultiIndex J = views[i].theta;
      J[j] += 1;
      checks.push_back(Check{i, j, R.jet_var(views[i].dep, J)});
    }
  }
  std::sort(checks.begin(), checks.end(),
            [&R](const Check& a, const Check& b) { return R.compare(a.target, b.target) < 0; });
  for (const auto& ck : checks) {
    Poly dp = differentiate(R, views[ck.eq].p, ck.j);
    Reduction red = reduce(R, dp, views, policy);
    if (!red.rem.is_zero()) return red.rem;
  }
  return std::nullopt;
}

std::vector<Poly> eliminate(const SimpleSystem& S, std::uint32_t block_index) {
  const DiffRing& R = *S.ring;
  if (block_index >= R.ranking().blocks.size()) throw NotBlockRanking();
  std::vector<Poly> out;
  for (const auto& e : S.equations) {
    std::vector<VarId> vs;
    e.p.vars(vs);
    bool ok = true;
    for (VarId v : vs) {
      if (!R.is_jet(v)) continue;
      if (R.block_of_dep(R.info(v).dep) < block_index) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(e.p);
  }
  return out;
}

Poly transport(const Poly& p, const DiffRing& from, const DiffRing& to) {
  std::vector<Poly::Term> terms;
  for (const auto& [m, c] : p.terms()) {
    Mono nm;
    for (const auto& [v, k] : m.e) {
      auto info = from.info(v);
      VarId nv;
      switch (info.kind) {
        case VarKind::Jet: {
          auto dep = to.dep_index(from.dependents()[info.dep]);
          if (!dep) throw std::invalid_argument("transport: unknown dependent");
          nv = to.jet_var(*dep, info.index);
          break;
        }
        case VarKind::Param:
        case VarKind::Indep: {
          auto s = to.symbol(info.kind == VarKind::Param ? from.params()[info.sym]
                                                         : from.indeps()[info.sym]);
          if (!s) throw std::invalid_argument("transport: unknown symbol");
          nv = *s;
          break;
        }
      }
      nm = nm.mul(Mono::var(nv, k));
    }
    terms.emplace_back(std::move(nm), c);
  }
  return Poly::from_terms(std::move(terms));
}

}  // namespace thomas
