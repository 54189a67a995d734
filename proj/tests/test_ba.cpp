#include "doctest.h"

#include <map>
#include <set>

#include "dvlg/ba.hpp"
#include "dvlg/error.hpp"
#include "dvlg/generate.hpp"
#include "dvlg/normalize.hpp"
#include "dvlg/parser.hpp"
#include "dvlg/random.hpp"

using namespace dvlg;
using namespace dvlg::ba;
using logic::Formula;
using logic::parse;
using logic::print;
using logic::Sort;

namespace {

const logic::SortContext kL{{"l", Sort::L}, {"m", Sort::L}};

Formula universal_closure(Formula f) {
  auto fv = logic::free_vars(f);
  for (auto it = fv.rbegin(); it != fv.rend(); ++it) f = logic::forall(it->first, it->second, f);
  return f;
}

Formula iff(const Formula& a, const Formula& b) { return logic::conj(logic::implies(a, b), logic::implies(b, a)); }

// Equivalence of two formulas over at most two free variables, judged in the interval algebra.
bool interval_equivalent(const Formula& a, const Formula& b) {
  Formula s = universal_closure(iff(a, b));
  return interval_check(s, static_cast<unsigned>(logic::quantifier_depth(s)));
}

IntervalSet iv(std::vector<std::pair<Rational, Rational>> v) { return IntervalSet::from(std::move(v)); }

}  // namespace

TEST_CASE("ba_qe examples") {
  Formula r = ba_qe(parse("exists y:L. y << l & ~(y = bot) & ~(y = l)", kL));
  CHECK(logic::is_quantifier_free(r));
  CHECK(interval_equivalent(r, parse("~(l = bot)", kL)));
  CHECK(ba_qe(parse("exists y:L. y cap l = bot & y cup l = top", kL)).kind() == logic::FormulaKind::True);
  CHECK(ba_qe(parse("exists y:L. y = l", kL)).kind() == logic::FormulaKind::True);
}

TEST_CASE("ba_qe of the nonempty-proper-part formula prints as a single disequality") {
  CHECK(parse("~l = bot", kL) == parse("~(l = bot)", kL));
  CHECK(print(ba_qe(parse("exists y:L. y << l & ~(y = bot) & ~(y = l)", kL))) == "~l = bot");
}

TEST_CASE("ba_decide examples") {
  CHECK(ba_decide(parse("forall x:L. bot < x -> exists y:L. bot < y & y < x")));
  CHECK_FALSE(ba_decide(parse("exists x:L. ~(x = bot) & forall y:L. y << x -> y = bot | y = x")));
  CHECK_FALSE(ba_decide(parse("top = bot")));
  CHECK(ba_decide(parse("forall a:L. a cup compl(a) = top & a cap compl(a) = bot")));
  CHECK_THROWS_AS(ba_decide(parse("l = bot", kL)), Error);
  try {
    ba_decide(parse("exists a:G. P(a) = top"));
    FAIL("expected NotLatticeSorted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotLatticeSorted);
  }
}

TEST_CASE("closed valuation terms evaluate through P(0) = top") {
  CHECK(ba_decide(parse("P(0) = top")));
  CHECK_FALSE(ba_decide(parse("P(0) << bot")));
}

TEST_CASE("interval_check examples") {
  CHECK(interval_check(parse("forall x:L. bot < x -> exists y:L. bot < y & y < x"), 2));
  CHECK(interval_check(parse("exists x:L. x cap compl(x) = bot"), 1));
  CHECK_FALSE(interval_check(parse("forall x:L. x = bot | x = top"), 1));
  try {
    interval_check(parse("forall x:L. exists y:L. y << x"), 1);
    FAIL("expected DepthExceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DepthExceeded);
  }
  CHECK_THROWS_AS(interval_check(parse("top = top"), 5), Error);
}

TEST_CASE("interval algebra canonical form") {
  const Rational h(1, 2), q(1, 4);
  auto a = iv({{q, h}, {Rational(0), q}});
  REQUIRE(a.intervals().size() == 1);
  CHECK(a.intervals()[0] == std::pair<Rational, Rational>(Rational(0), h));
  CHECK(a.complement() == iv({{h, Rational(1)}}));
  CHECK(a.join(a.complement()) == IntervalSet::top());
  CHECK(a.meet(a.complement()).is_empty());
  CHECK(iv({{Rational(0), q}, {h, Rational(1)}}).complement() == iv({{q, h}}));
  CHECK(iv({{h, h}}).is_empty());
  CHECK(a.proper_half() == iv({{Rational(0), q}}));
  CHECK(IntervalSet::bottom().proper_half().is_empty());
  CHECK(iv({{q, h}}).below(a));
  CHECK_FALSE(a.below(iv({{q, h}})));
}

TEST_CASE("interval algebra is a Boolean algebra on random elements") {
  Rng rng(seed_from_env(11), "interval laws");
  auto random_set = [&] {
    std::vector<std::pair<Rational, Rational>> v;
    for (long i = rng.uniform(0, 3); i > 0; --i) {
      Rational a(rng.uniform(0, 8), 8), b(rng.uniform(0, 8), 8);
      v.emplace_back(std::min(a, b), std::max(a, b));
    }
    return IntervalSet::from(v);
  };
  for (int i = 0; i < 300; ++i) {
    auto x = random_set(), y = random_set(), z = random_set();
    CHECK(x.meet(y.join(z)) == x.meet(y).join(x.meet(z)));
    CHECK(x.join(y).complement() == x.complement().meet(y.complement()));
    CHECK(x.complement().complement() == x);
    for (std::size_t j = 0; j + 1 < x.intervals().size(); ++j)
      CHECK(x.intervals()[j].second < x.intervals()[j + 1].first);
    if (!x.is_empty()) {
      auto half = x.proper_half();
      CHECK(half.below(x));
      CHECK_FALSE(half.is_empty());
      CHECK_FALSE(half == x);
    }
  }
}

TEST_CASE("ba_decide agrees with interval_check on random sentences of depth <= 3") {
  Rng rng(seed_from_env(7), "ba corpus");
  int true_count = 0;
  for (int i = 0; i < 100; ++i) {
    Formula s = gen::lattice_sentence(rng, {3, 6, 3});
    const unsigned d = static_cast<unsigned>(logic::quantifier_depth(s));
    INFO(print(s));
    const bool v = ba_decide(s);
    CHECK(v == interval_check(s, d));
    true_count += v;
  }
  CHECK(true_count > 10);
  CHECK(true_count < 90);
}

TEST_CASE("ba_qe output is quantifier-free over the input's free variables") {
  Rng rng(seed_from_env(5), "ba qe shape");
  for (int i = 0; i < 60; ++i) {
    Formula s = gen::lattice_sentence(rng, {2, 5, 3});
    // Open up the outer quantifier so the formula keeps a free variable.
    Formula f = s.is_quantifier() ? s.body() : s;
    Formula r = ba_qe(f);
    INFO(print(f));
    CHECK(logic::is_quantifier_free(r));
    std::set<std::string> allowed;
    for (const auto& [v, sort] : logic::free_vars(f)) allowed.insert(v);
    for (const auto& [v, sort] : logic::free_vars(r)) CHECK(allowed.count(v) == 1);
    CHECK(interval_equivalent(f, r));
  }
}

TEST_CASE("minterm elimination matches the closed-form elimination") {
  Rng rng(seed_from_env(9), "ba minterm");
  for (int i = 0; i < 60; ++i) {
    Formula s = gen::lattice_sentence(rng, {2, 5, 3});
    Formula f = s.is_quantifier() ? s.body() : s;
    INFO(print(f));
    Formula a = ba_qe(f), b = ba_qe_minterm(f);
    CHECK(logic::is_quantifier_free(b));
    CHECK(interval_equivalent(a, b));
  }
  Formula r = ba_qe_minterm(parse("exists y:L. y << l & ~(y = bot) & ~(y = l)", kL));
  CHECK(interval_equivalent(r, parse("~(l = bot)", kL)));
}

TEST_CASE("removing complements preserves truth") {
  Rng rng(seed_from_env(13), "ba compl");
  int checked = 0;
  for (int i = 0; i < 80 && checked < 30; ++i) {
    Formula s = gen::lattice_sentence(rng, {2, 4, 3});
    if (!logic::mentions_compl(s)) continue;
    ++checked;
    Formula r = logic::remove_complement(s);
    INFO(print(s));
    CHECK_FALSE(logic::mentions_compl(r));
    CHECK(ba_decide(s) == ba_decide(r));
  }
  CHECK(checked >= 10);
  CHECK(ba_decide(logic::remove_complement(parse("forall l:L. compl(compl(l)) = l"))));
}
