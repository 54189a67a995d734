#include "doctest.h"

#include "dvlg/error.hpp"
#include "dvlg/generate.hpp"
#include "dvlg/parser.hpp"
#include "dvlg/periodic_logic.hpp"
#include "dvlg/random.hpp"
#include "dvlg/sw.hpp"

using namespace dvlg;
using namespace dvlg::periodic;

namespace {

PeriodicFn pf(unsigned k, std::vector<Rational> vals) { return normalize(k, std::move(vals)); }

bool holds(const std::string& text, const PeriodicEnv& env) { return eval_qf(logic::parse(text), env); }

WitnessOptions exact() {
  WitnessOptions o;
  o.exact_columns = true;
  return o;
}

}  // namespace

TEST_CASE("eval_qf on the periodic model") {
  PeriodicEnv env;
  env.group["f"] = pf(1, {Rational(1), Rational(-1)});
  env.group["g"] = pf(0, {Rational(2)});
  env.lattice["c"] = PeriodicSet::from_indices(1, {0});
  CHECK(holds("f <= g", env));
  CHECK_FALSE(holds("0 <= f", env));
  CHECK(holds("P(f) = c", env));
  CHECK(holds("P(g) = top", env));
  CHECK(holds("~P(f) = top & ~P(-f) = top", env));
  CHECK(holds("f meet 0 <= 0 & 2*f + g = (f + f) + g", env));
  CHECK(holds("compl(c) = P(-f) cap compl(P(f))", env));
  CHECK_THROWS_AS(eval_qf(logic::parse("exists x:G. x = f"), env), Error);
  CHECK_THROWS_AS(eval_qf(logic::parse("h <= f"), env), Error);
}

TEST_CASE("witness examples") {
  auto w = find_witness(logic::parse("exists x:G. 0 <= x & ~x = 0 & ~P(-x) = bot"));
  REQUIRE(w.has_value());
  CHECK_FALSE(w->exact);
  const PeriodicFn& x = w->values.at("x");
  CHECK(x.is_nonneg());
  CHECK_FALSE(x.is_zero());
  CHECK_FALSE(periodic_valuation(-x).is_empty());

  CHECK_FALSE(find_witness(logic::parse("exists x:G. 0 <= x & ~x = 0 & P(-x) = top")).has_value());
  CHECK_FALSE(find_witness(logic::parse("exists x:G. 0 <= x & ~x = 0 & P(-x) = top"), exact()).has_value());

  // y = 3x with x positive somewhere has no grid solution.
  const auto off_grid = logic::parse("exists x:G. exists y:G. y = 3*x & ~x <= 0");
  CHECK_FALSE(find_witness(off_grid).has_value());
  auto e = find_witness(off_grid, exact());
  REQUIRE(e.has_value());
  CHECK(e->exact);
  CHECK(e->values.at("y") == scale(Rational(3), e->values.at("x")));

  // Two negated atoms need two columns.
  auto two = find_witness(logic::parse("exists x:G. ~x <= 0 & ~0 <= x"));
  REQUIRE(two.has_value());
  CHECK(two->values.at("x").k() >= 1);
}

TEST_CASE("witness search rejects other shapes") {
  CHECK_THROWS_AS(find_witness(logic::parse("forall x:G. 0 <= x")), Error);
  CHECK_THROWS_AS(find_witness(logic::parse("exists x:G. exists l:L. P(x) = l")), Error);
  CHECK_THROWS_AS(find_witness(logic::parse("exists x:G. x <= a")), Error);
  CHECK(is_existential_group_sentence(logic::parse("exists x:G. exists y:G. x <= y")));
  CHECK_FALSE(is_existential_group_sentence(logic::parse("exists x:G. forall y:G. x <= y")));
}

TEST_CASE("witnesses exist exactly for decider-true existential sentences") {
  Rng rng(seed_from_env(23), "witness");
  int truths = 0, off_grid = 0;
  for (int i = 0; i < 120; ++i) {
    const auto s = gen::existential_group_sentence(rng, 1 + static_cast<unsigned>(rng.index(3)),
                                                   1 + static_cast<unsigned>(rng.index(3)));
    const bool truth = sw::decide_ec(s);
    const auto w = find_witness(s, exact());
    CAPTURE(logic::print(s));
    CHECK(w.has_value() == truth);
    if (truth) ++truths;
    if (w && w->exact) ++off_grid;
    if (w) {
      PeriodicEnv env;
      env.group = w->values;
      const logic::Formula* m = &s;
      while (m->kind() == logic::FormulaKind::Exists) m = &m->body();
      CHECK(eval_qf(*m, env));
    }
  }
  CHECK(truths > 30);
  CHECK(truths < 120);
  MESSAGE("exact columns needed for " << off_grid << " sentences");
}
