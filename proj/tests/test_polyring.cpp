#include "doctest.h"
#include "support.hpp"
#include "thomas/polyops.hpp"

using namespace thomas;
using testsupport::Rng;
using testsupport::random_poly;
using testsupport::resultant_oracle;

namespace {

// algebraic ring Q[x > y > t]
struct XYT {
  DiffRing R{{}, {}, {"x", "y", "t"}};
  VarId x = R.jet_var(0), y = R.jet_var(1), t = R.jet_var(2);
  Poly X = Poly::var(x), Y = Poly::var(y), T = Poly::var(t);
  Poly one{mpq_class(1)};
};

}  // namespace

TEST_CASE("leader, initial, degree on the circle examples") {
  XYT r;
  Poly p1 = r.X * r.X + r.Y * r.Y - r.one;
  CHECK(leader_or_throw(r.R, p1) == r.x);
  CHECK(leader_deg(r.R, p1) == 2);
  CHECK(initial(r.R, p1) == r.one);

  Poly single = r.X;
  CHECK(leader_or_throw(r.R, single) == r.x);

  // t*y + t with x > y > t has leader y
  Poly p = r.T * r.Y + r.T;
  CHECK(leader_or_throw(r.R, p) == r.y);
  CHECK(initial(r.R, p) == r.T);

  // (1+t^2) y - t^2 + 1 wrt y
  Poly q = (r.one + r.T * r.T) * r.Y - r.T * r.T + r.one;
  CHECK(initial(r.R, q) == r.one + r.T * r.T);
}

TEST_CASE("leader of ground polynomial throws") {
  XYT r;
  Poly g = r.one + r.one;
  CHECK_THROWS_AS(leader_or_throw(r.R, g), GroundPolynomial);
}

TEST_CASE("discriminant matches the worked examples") {
  XYT r;
  Poly p1 = r.X * r.X + r.Y * r.Y - r.one;
  // disc(x^2+y^2-1) wrt x = -4y^2+4
  Poly d = discriminant(r.R, p1);
  CHECK(d == mpq_class(-4) * r.Y * r.Y + Poly(mpq_class(4)));

  // any degree-1 polynomial has discriminant 1
  Poly lin = r.T * r.X + r.Y;
  CHECK(discriminant(r.R, lin) == r.one);
}

TEST_CASE("discriminant of the singular-solution ODE example") {
  // u_x^3 - 4x u u_x + 8 u^2 over Q(x){u}: disc = -64 u^3 (27u - 4x^3)
  DiffRing R({"x"}, {}, {"u"});
  VarId u = R.jet_var(0);
  VarId ux = R.jet_var(0, {1});
  VarId xs = R.indep_var(0);
  Poly U = Poly::var(u), Ux = Poly::var(ux), X = Poly::var(xs);
  Poly p = Ux.pow(3) - mpq_class(4) * X * U * Ux + mpq_class(8) * U * U;
  CHECK(leader_or_throw(R, p) == ux);
  CHECK(separant(R, p) == mpq_class(3) * Ux * Ux - mpq_class(4) * X * U);
  Poly expected = mpq_class(-64) * U.pow(3) * (mpq_class(27) * U - mpq_class(4) * X.pow(3));
  CHECK(discriminant(R, p) == expected);
}

TEST_CASE("pseudo-division reproduces the stereographic projection step") {
  XYT r;
  Poly p1 = r.X * r.X + r.Y * r.Y - r.one;
  Poly p2 = r.X + r.T * r.Y - r.T;
  auto d = pseudo_divide(p1, p2, r.x);
  // p1 - (x - t y + t) p2 = (1+t^2) y^2 - 2 t^2 y + t^2 - 1
  Poly expected =
      (r.one + r.T * r.T) * r.Y * r.Y - mpq_class(2) * r.T * r.T * r.Y + r.T * r.T - r.one;
  CHECK(d.rem == expected);
  CHECK(d.mult == r.one);  // init(p2) = 1
  CHECK(d.quo == r.X - r.T * r.Y + r.T);
  CHECK(d.mult * p1 - d.quo * p2 == d.rem);
}

TEST_CASE("pseudo-division of p by itself") {
  XYT r;
  Poly p = r.X * r.X * r.Y + r.T * r.X + r.one;
  auto d = pseudo_divide(p, p, r.x);
  CHECK(d.rem.is_zero());
  CHECK(d.mult * p == d.quo * p);
}

TEST_CASE("pseudo-division identity on random inputs (500 cases)") {
  XYT r;
  Rng rng(20240811);
  std::vector<VarId> vars{r.x, r.y, r.t};
  int checked = 0;
  while (checked < 500) {
    Poly a = random_poly(rng, vars, 3, 4);
    Poly b = random_poly(rng, vars, 3, 3);
    if (b.deg(r.x) < 1 || a.deg(r.x) < b.deg(r.x)) continue;
    auto d = pseudo_divide(a, b, r.x);
    REQUIRE(d.mult * a - d.quo * b == d.rem);
    bool ok = d.rem.is_zero() || d.rem.deg(r.x) < b.deg(r.x);
    REQUIRE(ok);
    ++checked;
  }
}

TEST_CASE("resultant agrees with Sylvester-determinant oracle") {
  XYT r;
  Rng rng(7);
  std::vector<VarId> vars{r.x, r.y, r.t};
  for (int i = 0; i < 60; ++i) {
    Poly a = random_poly(rng, vars, 3, 3);
    Poly b = random_poly(rng, vars, 2, 3);
    if (a.deg(r.x) == 0 || b.deg(r.x) == 0) continue;
    CHECK(resultant(a, b, r.x) == resultant_oracle(a, b, r.x));
  }
}

TEST_CASE("euclid_prs on the circle pair ends proportional to y^2-1") {
  XYT r;
  Poly p = r.X * r.X + r.Y * r.Y - r.one;
  auto prs = euclid_prs(p, p.derivative(r.x), r.x);
  // last member is v-free and proportional to y^2 - 1
  CHECK(is_ground(r.R, prs.last) == false);
  CHECK(prs.last.deg(r.x) == 0);
  CHECK(prs.last.canonical() == (r.Y * r.Y - r.one).canonical());
}

TEST_CASE("euclid_prs of p with itself returns an associate of p") {
  XYT r;
  Poly p = r.X * r.X + r.T * r.X + r.one;
  auto prs = euclid_prs(p, p, r.x);
  CHECK(prs.last.canonical() == p.canonical());
}

TEST_CASE("euclid_prs detects coprime pairs via nonzero resultant oracle") {
  XYT r;
  Rng rng(99);
  std::vector<VarId> vars{r.x, r.y};
  int done = 0;
  while (done < 30) {
    Poly a = random_poly(rng, vars, 3, 3);
    Poly b = random_poly(rng, vars, 2, 3);
    if (a.deg(r.x) < 1 || b.deg(r.x) < 1 || a.deg(r.x) < b.deg(r.x)) continue;
    Poly res = resultant(a, b, r.x);
    if (res.is_zero()) continue;  // not coprime
    auto prs = euclid_prs(a, b, r.x);
    // coprime: the chain ends with an x-free nonzero member
    CHECK(prs.last.deg(r.x) == 0);
    CHECK(!prs.last.is_zero());
    ++done;
  }
}

TEST_CASE("squarefree split data on the worked factored example") {
  XYT r;
  // (y-1) * ((1+t^2) y - t^2 + 1), leader y
  Poly f = (r.Y - r.one) * ((r.one + r.T * r.T) * r.Y - r.T * r.T + r.one);
  auto data = squarefree_split_data(r.R, f);
  CHECK(!data.disc.is_zero());  // squarefree: disc nonzero
  // squarefree part is f itself
  CHECK(squarefree_part(f, r.y).canonical() == f.canonical());

  // p = (y-a)^2 (y-b) with a=1, b=t: product of distinct factors re-expands
  Poly p = (r.Y - r.one) * (r.Y - r.one) * (r.Y - r.T);
  Poly sf = squarefree_part(p, r.y);
  CHECK(sf.canonical() == ((r.Y - r.one) * (r.Y - r.T)).canonical());
  auto yun = yun_decompose(p, r.y);
  Poly re{mpq_class(1)};
  for (auto& [f_i, mult] : yun) re *= f_i.pow(mult);
  CHECK(re.canonical() == p.canonical());
}

TEST_CASE("discriminant vanishes exactly at repeated-root specializations") {
  // property: for random specializations of the lower variables, disc(p) = 0
  // iff the specialized univariate polynomial has a repeated root (checked by
  // the independent univariate gcd oracle), provided init does not vanish
  XYT r;
  Rng rng(4242);
  std::vector<VarId> vars{r.x, r.y, r.t};
  int done = 0;
  while (done < 40) {
    Poly p = random_poly(rng, vars, 3, 4);
    if (p.deg(r.x) < 2) continue;
    Poly disc = discriminant(r.R, p);
    Poly init = initial(r.R, p);
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<std::pair<VarId, mpq_class>> vals{{r.y, rng.coef(5)}, {r.t, rng.coef(5)}};
      Poly init_s = init;
      Poly disc_s = disc;
      for (auto& [w, val] : vals) {
        init_s = init_s.substitute(w, Poly(val));
        disc_s = disc_s.substitute(w, Poly(val));
      }
      if (init_s.is_zero()) continue;
      auto uni = testsupport::specialize_to_uni(p, r.x, vals);
      int distinct = testsupport::uni_distinct_roots(uni);
      bool has_repeat = distinct < testsupport::uni_deg(uni);
      CHECK(disc_s.is_zero() == has_repeat);
    }
    ++done;
  }
}

TEST_CASE("initial times leader power plus reductum reconstructs p") {
  XYT r;
  Rng rng(11);
  std::vector<VarId> vars{r.x, r.y, r.t};
  for (int i = 0; i < 50; ++i) {
    Poly p = random_poly(rng, vars, 3, 4);
    if (is_ground(r.R, p)) continue;
    VarId v = leader_or_throw(r.R, p);
    Poly rebuilt = initial(r.R, p) * Poly::var(v, p.deg(v)) + reductum(r.R, p);
    CHECK(rebuilt == p);
  }
}

TEST_CASE("canonical form is content-free with positive lead and stable") {
  XYT r;
  Poly p = mpq_class(-4) * r.Y * r.Y + Poly(mpq_class(4));
  Poly c = p.canonical();
  CHECK(c == r.Y * r.Y - r.one);
  CHECK(c.canonical() == c);
  CHECK(p == c.mul_scalar(p.canonical_unit()));

  Poly q = mpq_class(1, 6) * r.X + mpq_class(1, 4) * r.Y;
  CHECK(q.canonical() == mpq_class(2) * r.X + mpq_class(3) * r.Y);
}

TEST_CASE("gcd and exact division basics") {
  XYT r;
  Poly a = (r.X + r.Y) * (r.X - r.T);
  Poly b = (r.X + r.Y) * (r.Y + r.one);
  CHECK(gcd(a, b) == (r.X + r.Y).canonical());
  CHECK(exact_div_or_throw(a, r.X + r.Y) == r.X - r.T);
  CHECK(!exact_div(a, r.X + r.one).has_value());
}

TEST_CASE("poly_sqrt recognizes perfect squares") {
  XYT r;
  Poly s = mpq_class(3) * r.X * r.Y - mpq_class(2) * r.T + r.one;
  auto rt = poly_sqrt(s * s);
  REQUIRE(rt.has_value());
  CHECK((*rt == s || *rt == -s));
  CHECK(!poly_sqrt(s * s + r.one).has_value());
}

TEST_CASE("factor_split separates quadratics with square discriminant") {
  XYT r;
  Poly f = (r.one + r.T * r.T) * r.Y * r.Y - mpq_class(2) * r.T * r.T * r.Y + r.T * r.T - r.one;
  auto fs = factor_split(r.R, f);
  REQUIRE(fs.size() == 2);
  Poly f1 = (r.Y - r.one).canonical();
  Poly f2 = ((r.one + r.T * r.T) * r.Y - r.T * r.T + r.one).canonical();
  bool found1 = fs[0] == f1 || fs[1] == f1;
  bool found2 = fs[0] == f2 || fs[1] == f2;
  CHECK(found1);
  CHECK(found2);
}

TEST_CASE("factor_split pulls monomial and content factors") {
  DiffRing R({}, {}, {"u1", "y1", "y2"});
  VarId u1 = R.jet_var(0), y1 = R.jet_var(1), y2 = R.jet_var(2);
  Poly U = Poly::var(u1), Y1 = Poly::var(y1), Y2 = Poly::var(y2);
  // u1^2 (u1^2 - y1^2 - y2^2): factors u1 and the irreducible quadratic
  Poly f = U * U * (U * U - Y1 * Y1 - Y2 * Y2);
  auto fs = factor_split(R, f);
  REQUIRE(fs.size() == 2);
  CHECK(fs[0] == (U * U - Y1 * Y1 - Y2 * Y2).canonical());
  CHECK(fs[1] == U.canonical());
}
