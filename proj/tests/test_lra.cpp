#include "doctest.h"

#include "dvlg/lra.hpp"
#include "dvlg/random.hpp"

using namespace dvlg;
using namespace dvlg::lra;

namespace {

LinExpr var(VarId v, long c = 1) { return LinExpr::variable(v, Rational(c)); }

LraFormula ge(LinExpr e) { return LraFormula::atom({std::move(e), Rel::Ge}); }

bool eval_at(const LraFormula& f, std::vector<std::pair<VarId, Rational>> pt) { return evaluate(f, pt); }

}  // namespace

TEST_CASE("fm_eliminate examples") {
  // exists x. x >= y & x <= z  ->  y <= z
  LraFormula f = ge(var(0) - var(1)) && ge(var(2) - var(0));
  LraFormula r = eliminate({0}, f);
  for (long y = -2; y <= 2; ++y)
    for (long z = -2; z <= 2; ++z) CHECK(eval_at(r, {{1, y}, {2, z}}) == (y <= z));
  // exists x. x > 0
  CHECK(eliminate({0}, LraFormula::atom({var(0), Rel::Gt})).is_true());
  // exists x. 2x <= y & 3x >= z  ->  2z <= 3y
  LraFormula g = ge(var(1) - var(0, 2)) && ge(var(0, 3) - var(2));
  LraFormula rg = eliminate({0}, g);
  for (long y = -2; y <= 2; ++y)
    for (long z = -2; z <= 2; ++z) CHECK(eval_at(rg, {{1, y}, {2, z}}) == (2 * z <= 3 * y));
}

TEST_CASE("equalities are substituted") {
  LraFormula f = LraFormula::atom({var(0, 2) - var(1), Rel::Eq}) && LraFormula::atom({var(0) - var(2), Rel::Gt});
  LraFormula r = eliminate({0}, f);
  for (long y = -3; y <= 3; ++y)
    for (long z = -3; z <= 3; ++z) CHECK(eval_at(r, {{1, y}, {2, z}}) == (Rational(y, 2) > Rational(z)));
}

TEST_CASE("tidy detects contradictions") {
  CHECK_FALSE(tidy({{var(0) - LinExpr(Rational(1)), Rel::Ge}, {-var(0), Rel::Ge}}).has_value());
  CHECK_FALSE(tidy({{var(0), Rel::Gt}, {-var(0), Rel::Ge}}).has_value());
  CHECK(tidy({{var(0), Rel::Ge}, {-var(0), Rel::Ge}}).has_value());
  auto t = tidy({{var(0, 2), Rel::Ge}, {var(0) - LinExpr(Rational(1)), Rel::Ge}});
  REQUIRE(t.has_value());
  CHECK(t->size() == 1);
}

TEST_CASE("negated equalities split into two strict sides") {
  LraFormula f = !LraFormula::atom({var(0) - var(1), Rel::Eq}) && ge(var(0)) && ge(-var(0));
  LraFormula r = eliminate({0}, f);
  for (long y = -2; y <= 2; ++y) CHECK(eval_at(r, {{1, y}}) == (y != 0));
}

TEST_CASE("find_point examples") {
  // 2x = y, x > 1/2, y < 3
  Conjunction c{{var(0, 2) - var(1), Rel::Eq},
                {var(0) - LinExpr(Rational(1, 2)), Rel::Gt},
                {LinExpr(Rational(3)) - var(1), Rel::Gt}};
  auto p = find_point(c);
  REQUIRE(p.has_value());
  for (const auto& k : c) CHECK(k.holds(*p));
  CHECK_FALSE(find_point(Conjunction{{var(0), Rel::Gt}, {-var(0), Rel::Gt}}).has_value());
  // off the integers: 0 < 3x < 1
  auto q = find_point(Conjunction{{var(0), Rel::Gt}, {LinExpr(Rational(1)) - var(0, 3), Rel::Gt}});
  REQUIRE(q.has_value());
  CHECK(eval_at(ge(var(0)), *q));
}

TEST_CASE("find_point agrees with elimination on random formulas") {
  Rng rng(seed_from_env(17), "find_point");
  int sat = 0;
  for (int i = 0; i < 300; ++i) {
    const int nv = 1 + static_cast<int>(rng.index(3));
    std::vector<LraFormula> parts;
    for (int j = 0, m = 1 + static_cast<int>(rng.index(5)); j < m; ++j) {
      LinExpr e(rng.rational(3, 2));
      for (VarId v = 0; v < nv; ++v) e = e + var(v, rng.uniform(-2, 2));
      const Rel rel = static_cast<Rel>(rng.index(3));
      LraFormula a = LraFormula::atom({e, rel});
      parts.push_back(rng.coin(0.2) ? !a : a);
    }
    LraFormula f = rng.coin(0.3) ? LraFormula::any(parts) : LraFormula::all(parts);
    std::vector<VarId> vars;
    for (VarId v = 0; v < nv; ++v) vars.push_back(v);
    const bool feasible = eliminate(vars, f).is_true();
    auto p = find_point(f);
    CHECK(p.has_value() == feasible);
    if (p) {
      CHECK(evaluate(f, *p));
      ++sat;
    }
  }
  CHECK(sat > 30);
}
