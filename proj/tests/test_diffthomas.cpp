#include <set>

#include "doctest.h"
#include "support.hpp"
#include "thomas/engine.hpp"

using namespace thomas;
using testsupport::Rng;

namespace {

std::string key(const DiffRing& R, const Poly& p) {
  std::string s;
  Poly cp = p.canonical();
  for (const auto& [m, c] : cp.terms()) {
    s += c.get_str() + "*";
    for (auto& [v, k] : m.e) s += R.var_name(v) + "^" + std::to_string(k) + ".";
    s += ";";
  }
  return s;
}

struct Shape {
  std::set<std::string> eqs, ineqs;
};

Shape shape(const SimpleSystem& s) {
  Shape out;
  for (const auto& e : s.equations) out.eqs.insert(key(*s.ring, e.p));
  for (const auto& q : s.inequations) out.ineqs.insert(key(*s.ring, q.p));
  return out;
}

bool has_system(const Decomposition& d, const Shape& want) {
  for (const auto& s : d.systems)
    if (shape(s).eqs == want.eqs && shape(s).ineqs == want.ineqs) return true;
  return false;
}

void check_diff_simple(const Decomposition& d) {
  for (const auto& s : d.systems) {
    CHECK(verify_simple(s));
    // leader monomial sets are Janet complete and the equations passive
    std::map<std::uint32_t, std::vector<MultiIndex>> monos;
    const DiffRing& R = *s.ring;
    for (const auto& e : s.equations) {
      auto i = R.info(e.ld);
      monos[i.dep].push_back(i.index);
    }
    for (auto& [dep, M] : monos) CHECK(is_janet_complete(M));
    CHECK(!passivity_remainder(R, s.equation_polys()).has_value());
    // inequations equal their own full remainders
    for (const auto& q : s.inequations) {
      Reduction red = member_reduction(s, q.p);
      CHECK(red.rem.canonical() == q.p.canonical());
    }
  }
}

}  // namespace

TEST_CASE("singular-solution ODE: exactly the two systems of the worked example") {
  auto ring = std::make_shared<DiffRing>(std::vector<std::string>{"x"},
                                         std::vector<std::string>{},
                                         std::vector<std::string>{"u"});
  const DiffRing& R = *ring;
  VarId u = R.jet_var(0), ux = R.jet_var(0, {1});
  Poly U = Poly::var(u), Ux = Poly::var(ux), X = Poly::var(R.indep_var(0));
  Poly p = Ux.pow(3) - mpq_class(4) * X * U * Ux + mpq_class(8) * U * U;

  DecomposeOptions opts;
  opts.factor = true;
  auto d = decompose(DiffSystem{ring, {p}, {}}, opts);
  REQUIRE(d.systems.size() == 2);

  Poly dsc = U * (mpq_class(27) * U - mpq_class(4) * X.pow(3));
  Shape general{{key(R, p)}, {key(R, dsc)}};
  Shape singular{{key(R, dsc)}, {}};
  CHECK(has_system(d, general));
  CHECK(has_system(d, singular));
  check_diff_simple(d);

  // admissible derivations: single equations carry {d_x}
  for (const auto& s : d.systems)
    for (const auto& e : s.equations) CHECK(e.admissible == std::vector<bool>{true});
}

TEST_CASE("nonlinear PDE pair: the worked two-system decomposition") {
  auto ring = std::make_shared<DiffRing>(std::vector<std::string>{"x", "y"},
                                         std::vector<std::string>{},
                                         std::vector<std::string>{"u"});
  const DiffRing& R = *ring;
  VarId u = R.jet_var(0);
  VarId ux = R.jet_var(0, {1, 0});
  VarId uy = R.jet_var(0, {0, 1});
  VarId uxx = R.jet_var(0, {2, 0});
  VarId uyy = R.jet_var(0, {0, 2});
  Poly U = Poly::var(u);
  Poly p1 = Poly::var(uxx) - Poly::var(uyy);
  Poly p2 = Poly::var(ux) - U * U;

  DecomposeOptions opts;
  opts.factor = true;
  auto d = decompose(DiffSystem{ring, {p1, p2}, {}}, opts);
  REQUIRE(d.systems.size() == 2);

  Shape first{{key(R, p2), key(R, Poly::var(uy) + U * U)}, {}};
  Shape second{{key(R, p2), key(R, Poly::var(uy) - U * U)}, {key(R, U)}};
  CHECK(has_system(d, first));
  CHECK(has_system(d, second));
  check_diff_simple(d);

  // the paper's order: the u_y + u^2 system is created first
  CHECK(shape(d.systems[0]).eqs == first.eqs);

  // both input equations vanish on every part
  for (const auto& s : d.systems) {
    CHECK(member(s, p1));
    CHECK(member(s, p2));
  }

  // admissible derivations: u_x row {d_x, d_y}, u_y row {*, d_y}
  for (const auto& s : d.systems) {
    for (const auto& e : s.equations) {
      if (e.ld == ux) CHECK(e.admissible == std::vector<bool>{true, true});
      if (e.ld == uy) CHECK(e.admissible == std::vector<bool>{false, true});
    }
  }
}

TEST_CASE("passivity check surfaces the worked integrability condition") {
  auto ring = std::make_shared<DiffRing>(std::vector<std::string>{"x", "y"},
                                         std::vector<std::string>{},
                                         std::vector<std::string>{"u"});
  const DiffRing& R = *ring;
  VarId u = R.jet_var(0);
  VarId ux = R.jet_var(0, {1, 0});
  VarId uyy = R.jet_var(0, {0, 2});
  Poly U = Poly::var(u), Uy = Poly::var(R.jet_var(0, {0, 1}));
  Poly p2 = Poly::var(ux) - U * U;
  Poly p3 = Poly::var(uyy) - mpq_class(2) * U * U * U;

  auto rem = passivity_remainder(R, {p2, p3});
  REQUIRE(rem.has_value());
  Poly expected = (Uy + U * U) * (Uy - U * U);
  CHECK(rem->canonical() == expected.canonical());

  // a single equation is passive
  CHECK(!passivity_remainder(R, {p2}).has_value());
}

TEST_CASE("u_t = 0 gives a single trivially passive system") {
  auto ring = std::make_shared<DiffRing>(std::vector<std::string>{"t"},
                                         std::vector<std::string>{},
                                         std::vector<std::string>{"u"});
  Poly ut = Poly::var(ring->jet_var(0, {1}));
  auto d = decompose(DiffSystem{ring, {ut}, {}}, {});
  REQUIRE(d.systems.size() == 1);
  CHECK(d.systems[0].equations.size() == 1);
  CHECK(d.systems[0].inequations.empty());
}

TEST_CASE("Cauchy-Riemann: elimination in both block orders") {
  // {u} >> {v}: passivity yields v_xx + v_yy; block 1 elimination returns it
  RankingSpec uv;
  uv.blocks = {{0}, {1}};
  auto ring = std::make_shared<DiffRing>(std::vector<std::string>{"x", "y"},
                                         std::vector<std::string>{},
                                         std::vector<std::string>{"u", "v"}, uv);
  const DiffRing& R = *ring;
  Poly p1 = Poly::var(R.jet_var(0, {1, 0})) - Poly::var(R.jet_var(1, {0, 1}));
  Poly p2 = Poly::var(R.jet_var(0, {0, 1})) + Poly::var(R.jet_var(1, {1, 0}));

  auto d = decompose(DiffSystem{ring, {p1, p2}, {}}, {});
  REQUIRE(d.systems.size() == 1);  // linear system: no case distinctions
  check_diff_simple(d);

  Poly harmonic_v = Poly::var(R.jet_var(1, {2, 0})) + Poly::var(R.jet_var(1, {0, 2}));
  CHECK(member(d.systems[0], harmonic_v));
  CHECK(member_radical(d.systems, harmonic_v));

  auto elim = eliminate(d.systems[0], 1);
  bool found = false;
  for (const auto& e : elim)
    if (e.canonical() == harmonic_v.canonical()) found = true;
  CHECK(found);

  // block 0 returns all equations
  CHECK(eliminate(d.systems[0], 0).size() == d.systems[0].equations.size());
  CHECK_THROWS_AS(eliminate(d.systems[0], 7), NotBlockRanking);

  // {v} >> {u} yields the harmonicity of u
  RankingSpec vu;
  vu.blocks = {{1}, {0}};
  auto ring2 = std::make_shared<DiffRing>(std::vector<std::string>{"x", "y"},
                                          std::vector<std::string>{},
                                          std::vector<std::string>{"u", "v"}, vu);
  auto d2 = decompose(DiffSystem{ring2, {transport(p1, R, *ring2), transport(p2, R, *ring2)}, {}},
                      {});
  REQUIRE(d2.systems.size() == 1);
  Poly harmonic_u =
      Poly::var(ring2->jet_var(0, {2, 0})) + Poly::var(ring2->jet_var(0, {0, 2}));
  CHECK(member_radical(d2.systems, harmonic_u));

  // a fresh indeterminate is not a member
  Poly fresh = Poly::var(ring2->jet_var(1, {3, 3}));
  CHECK(!member_radical(d2.systems, fresh));
}

TEST_CASE("membership: random differential ideal combinations reduce to zero") {
  auto ring = std::make_shared<DiffRing>(std::vector<std::string>{"x", "y"},
                                         std::vector<std::string>{},
                                         std::vector<std::string>{"u"});
  const DiffRing& R = *ring;
  VarId u = R.jet_var(0);
  Poly U = Poly::var(u);
  Poly e1 = Poly::var(R.jet_var(0, {1, 0})) - U * U;
  Poly e2 = Poly::var(R.jet_var(0, {0, 1})) + U * U;

  DecomposeOptions opts;
  opts.factor = true;
  auto d = decompose(DiffSystem{ring, {e1, e2}, {}}, opts);
  REQUIRE(!d.systems.empty());
  const auto& s = d.systems[0];

  Rng rng(314159);
  for (int it = 0; it < 25; ++it) {
    Poly acc;
    for (const auto& e : s.equations) {
      MultiIndex theta{(std::uint32_t)rng.uniform(0, 1), (std::uint32_t)rng.uniform(0, 1)};
      Poly c = testsupport::random_poly(rng, {u, R.jet_var(0, {1, 0})}, 2, 2, false);
      acc += c * differentiate(R, e.p, theta);
    }
    CHECK(member(s, acc));
  }
  CHECK(member(s, Poly()));

  // u_y^2 - u^4 lies in the ideal of {u_x - u^2, u_y + u^2}
  VarId uy = R.jet_var(0, {0, 1});
  Poly p4 = Poly::var(uy) * Poly::var(uy) - U.pow(4);
  bool in_first = false;
  for (const auto& sys : d.systems) {
    Shape sh = shape(sys);
    if (sh.eqs.count(key(R, Poly::var(uy) + U * U))) {
      CHECK(member(sys, p4));
      in_first = true;
    }
  }
  CHECK(in_first);
}

TEST_CASE("a linear PDE system yields exactly one simple system") {
  auto ring = std::make_shared<DiffRing>(std::vector<std::string>{"x", "y"},
                                         std::vector<std::string>{},
                                         std::vector<std::string>{"u"});
  const DiffRing& R = *ring;
  // heat-like pair with an integrability consequence
  Poly e1 = Poly::var(R.jet_var(0, {2, 0})) - Poly::var(R.jet_var(0, {0, 1}));
  Poly e2 = Poly::var(R.jet_var(0, {1, 1})) - Poly::var(R.jet_var(0, {0, 0}));
  auto d = decompose(DiffSystem{ring, {e1, e2}, {}}, {});
  CHECK(d.systems.size() == 1);
  check_diff_simple(d);
}

TEST_CASE("disjointness of the PDE decomposition parts") {
  auto ring = std::make_shared<DiffRing>(std::vector<std::string>{"x", "y"},
                                         std::vector<std::string>{},
                                         std::vector<std::string>{"u"});
  const DiffRing& R = *ring;
  VarId u = R.jet_var(0);
  Poly U = Poly::var(u);
  Poly p1 = Poly::var(R.jet_var(0, {2, 0})) - Poly::var(R.jet_var(0, {0, 2}));
  Poly p2 = Poly::var(R.jet_var(0, {1, 0})) - U * U;
  DecomposeOptions opts;
  opts.factor = true;
  auto d = decompose(DiffSystem{ring, {p1, p2}, {}}, opts);
  REQUIRE(d.systems.size() == 2);
  CHECK(are_disjoint(d.systems[0], d.systems[1], opts));

  // radical membership agrees between the factored and unfactored strategies
  auto d2 = decompose(DiffSystem{ring, {p1, p2}, {}}, {});
  REQUIRE(!d2.systems.empty());
  VarId uy = R.jet_var(0, {0, 1});
  Poly probe = (Poly::var(uy) + U * U) * (Poly::var(uy) - U * U);
  CHECK(member_radical(d.systems, probe) == member_radical(d2.systems, probe));
  Poly nonmember = Poly::var(uy) + U;
  CHECK(member_radical(d.systems, nonmember) == member_radical(d2.systems, nonmember));
}
