#include "doctest.h"

#include <algorithm>

#include "dvlg/ba.hpp"
#include "dvlg/generate.hpp"
#include "dvlg/parser.hpp"
#include "support.hpp"

using namespace dvlg;
using namespace dvlg::sw;
using logic::Formula;
using logic::LinearGroupTerm;
using logic::parse;
using logic::print;
using logic::Sort;

namespace {

const logic::SortContext kCtx{{"x", Sort::G}, {"y", Sort::G}, {"l", Sort::L}, {"m", Sort::L}};

// exists a over the body, eliminated, compared with the oracle on both sides.
void check_elimination(const char* body_text, const char* expected_text) {
  Formula body = parse(body_text, kCtx);
  logic::NameSupply names;
  Formula prepared = logic::nnf(logic::simplify(logic::push_valuation(logic::group_atoms_to_lattice(body))));
  Formula r = eliminate_exists("a", prepared, Mode::TPlus, names);
  Formula expected = parse(expected_text, kCtx);
  Formula original = logic::exists("a", Sort::G, body);
  Rng rng(seed_from_env(3), body_text);
  for (std::size_t n = 1; n <= 3; ++n)
    for (int i = 0; i < 15; ++i) {
      auto env = testing::random_assignment(rng, original, n);
      FinStdStructure s(n);
      INFO(print(r));
      const bool truth = oracle::decide_finite(s, original, env);
      CHECK(oracle::decide_finite(s, r, env) == truth);
      CHECK(oracle::decide_finite(s, expected, env) == truth);
    }
}

bool decide_text(const char* text) { return decide_ec(parse(text)); }

}  // namespace

TEST_CASE("eliminate_group_var examples") {
  check_elimination("l << P(a - x) & m << P(y - a)", "l cap m << P(y - x)");
  check_elimination("top << P(a - x)", "true");
  check_elimination("l << P(a - x) & l << P(-a)", "l << P(-x)");
}

TEST_CASE("eliminate_group_var on explicit blocks") {
  PrimitiveBlock b;
  b.variable = "a";
  b.lowers.push_back({logic::lvar("l"), LinearGroupTerm::variable("x"), false});
  b.uppers.push_back({logic::lvar("m"), LinearGroupTerm::variable("y"), false});
  CHECK(print(eliminate_group_var(b)) == "l cap m << P(y - x)");
  b.uppers[0].strict = true;
  CHECK(print(eliminate_group_var(b)) == "l cap m << P(y - x) cap compl(P(x - y))");
  PrimitiveBlock one_sided{"a", {{logic::top(), LinearGroupTerm::variable("x"), true}}, {}};
  CHECK(eliminate_group_var(one_sided).kind() == logic::FormulaKind::True);
  PrimitiveBlock bad{"a", {{logic::val(logic::gvar("a")), LinearGroupTerm::variable("x"), false}}, {}};
  try {
    eliminate_group_var(bad);
    FAIL("expected NotPrimitive");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotPrimitive);
  }
  PrimitiveBlock bad2{"a", {{logic::top(), LinearGroupTerm::variable("a"), false}}, {}};
  CHECK_THROWS_AS(eliminate_group_var(bad2), Error);
}

TEST_CASE("reduce examples") {
  auto r = reduce(parse("exists b:G. b+b = a"), Mode::TPlus);
  CHECK(r.k == 0);
  CHECK(r.chi.kind() == logic::FormulaKind::True);

  r = reduce(parse("0 <= a"), Mode::TPlus);
  REQUIRE(r.k == 1);
  CHECK(print(r.terms[0]) == "a");
  CHECK(print(r.chi) == "p_1 = top");
  CHECK(print(r.assemble()) == "exists p_1:L. p_1 = top & p_1 = P(a)");
  logic::sort_check(r.assemble());
}

TEST_CASE("ec reduction of the complement-disjoint element condition") {
  Formula f = parse("0 <= a & exists g:G. 0 <= g & ~(g = 0) & a meet g = 0");
  auto r = reduce(f, Mode::EC);
  CHECK(logic::is_quantifier_free(r.chi));
  auto idx = [&](const char* t) {
    auto it = std::find(r.terms.begin(), r.terms.end(), logic::parse_term(t, {{"a", Sort::G}}));
    return it == r.terms.end() ? r.k : static_cast<std::size_t>(it - r.terms.begin());
  };
  const std::size_t neg = idx("-a"), pos = idx("a");
  REQUIRE(neg < r.k);
  REQUIRE(pos < r.k);
  // Under P(a) = top the reduct says exactly P(-a) != bot.
  Formula target = logic::negation(logic::leq(logic::lvar(r.names[neg]), logic::bot()));
  Formula hyp = logic::leq(logic::lvar(r.names[pos]), logic::top());
  Formula claim = logic::implies(hyp, logic::conj(logic::implies(r.chi, target), logic::implies(target, r.chi)));
  for (std::size_t i = r.k; i-- > 0;) claim = logic::forall(r.names[i], Sort::L, claim);
  CHECK(ba::ba_decide(claim));
}

TEST_CASE("decide_ec known answers") {
  CHECK(decide_text("forall v:G. exists b:G. b+b = v"));
  CHECK(decide_text("forall v:G. exists b:G. b+b+b = v"));
  CHECK(decide_text("exists v:G. 0 <= v & P(-v) = bot"));
  CHECK_FALSE(decide_text("forall a:G. 0 <= a -> exists g:G. (0 <= g & ~(g = 0) & a meet g = 0)"));
  CHECK(decide_text("forall l:L. exists a:G. P(a) = l"));
  CHECK(decide_text("forall x:L. bot < x -> exists y:L. bot < y & y < x"));
  CHECK_FALSE(decide_text("top = bot"));
  CHECK(decide_text("forall a:G. a <= a join 0"));
  CHECK_FALSE(decide_text("forall a:G. 0 <= a"));
}

TEST_CASE("decide_ec is invariant under bound-variable renaming") {
  Rng rng(seed_from_env(21), "sw rename");
  gen::TwoSortedShape shape;
  shape.group_params = {};
  shape.lattice_params = {};
  int decided = 0;
  for (int i = 0; i < 40; ++i) {
    Formula s = gen::two_sorted_formula(rng, shape);
    if (!logic::free_vars(s).empty()) continue;
    logic::NameSupply names;
    names.reserve_all(s);
    Formula renamed = logic::rename_apart(s, names);
    try {
      const bool v = decide_ec(s);
      CHECK(decide_ec(s) == v);
      CHECK(decide_ec(renamed) == v);
      ++decided;
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::ResourceLimit);
    }
  }
  CHECK(decided > 5);
}

TEST_CASE("out-of-fragment inputs are rejected in tplus mode") {
  Formula f = parse("forall a:G. 0 <= a -> exists g:G. (0 <= g & ~(g = 0) & a meet g = 0)");
  try {
    reduce(f, Mode::TPlus);
    FAIL("expected UnsupportedFragment");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnsupportedFragment);
  }
  CHECK_NOTHROW(reduce(f, Mode::EC));
}

TEST_CASE("reduction is equivalent to the input in Stan(Q^n)") {
  Rng rng(seed_from_env(17), "sw oracle");
  gen::TwoSortedShape shape;
  shape.group_params = {"a", "b"};
  shape.lattice_params = {"l"};
  shape.max_atoms = 8;
  int accepted = 0;
  for (int i = 0; i < 120 && accepted < 40; ++i) {
    Formula f = gen::two_sorted_formula(rng, shape);
    if (!logic::has_group_quantifier(f)) continue;
    ReductionOutput r;
    try {
      r = reduce(f, Mode::TPlus);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::UnsupportedFragment);
      continue;
    }
    ++accepted;
    INFO(print(f));
    INFO(print(r.assemble()));
    for (const auto& [v, sort] : logic::free_vars(r.chi)) CHECK(sort == Sort::L);
    CHECK_FALSE(logic::has_group_quantifier(r.chi));
    logic::sort_check(r.assemble());
    auto agreement = testing::reduct_agreement(f, r, rng, 3, 4);
    CHECK_MESSAGE(agreement.mismatches == 0, agreement.first_mismatch);
  }
  CHECK(accepted >= 20);
}

TEST_CASE("positive existential inputs give positive existential reductions") {
  Rng rng(seed_from_env(19), "sw positive");
  gen::TwoSortedShape shape;
  shape.positive_existential = true;
  shape.allow_compl = false;
  shape.group_params = {"a", "b"};
  for (int i = 0; i < 40; ++i) {
    Formula f = gen::two_sorted_formula(rng, shape);
    REQUIRE(is_positive_existential(f));
    auto r = reduce(f, Mode::TPlus);
    INFO(print(f));
    CHECK(is_positive_existential(r.assemble()));
  }
}
