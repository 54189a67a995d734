#include "doctest.h"

#include "dvlg/error.hpp"
#include "dvlg/generate.hpp"
#include "dvlg/parser.hpp"
#include "dvlg/syntax.hpp"

using namespace dvlg;
using namespace dvlg::logic;

namespace {

ErrorKind kind_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::PreconditionViolated;
}

}  // namespace

TEST_CASE("parse known sentences") {
  auto div = parse("forall v:G. exists a:G. a + a = v");
  CHECK(div.kind() == FormulaKind::Forall);
  CHECK(div.body().body().kind() == FormulaKind::GEq);
  auto atomless = parse("forall x:L. bot < x -> exists y:L. bot < y & y < x");
  CHECK(atomless.body().kind() == FormulaKind::Implies);
  CHECK(atomless.body().kid(1).kind() == FormulaKind::Exists);
  auto p0 = parse("P(0) = top");
  CHECK(p0.kind() == FormulaKind::LEq);
  CHECK(free_vars(p0).empty());
}

TEST_CASE("sort errors") {
  CHECK(kind_of([] { parse("x + top = x"); }) == ErrorKind::SortError);
  CHECK(kind_of([] { parse_term("x + top"); }) == ErrorKind::SortError);
  CHECK(kind_of([] { parse("P(l) = top", {{"l", Sort::L}}); }) == ErrorKind::SortError);
  CHECK(kind_of([] { parse("x = y"); }) == ErrorKind::SortError);
  CHECK_NOTHROW(parse("P(x) = top", {{"x", Sort::G}}));
  CHECK_NOTHROW(sort_check(parse("P(x) = top"), {{"x", Sort::G}}));
  CHECK(kind_of([] { sort_check(parse("P(x) = top"), {{"x", Sort::L}}); }) == ErrorKind::SortError);
}

TEST_CASE("syntax errors carry positions") {
  try {
    parse("forall x:G. x <= ");
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SyntaxError);
    CHECK(e.position() == 17);
  }
  CHECK(kind_of([] { parse("3 <= x"); }) == ErrorKind::SyntaxError);
  CHECK(kind_of([] { parse("x <= y $"); }) == ErrorKind::SyntaxError);
}

TEST_CASE("precedence") {
  auto f = parse("a <= b & c <= d | e <= g -> true");
  CHECK(f.kind() == FormulaKind::Implies);
  CHECK(f.kid(0).kind() == FormulaKind::Or);
  CHECK(f.kid(0).kid(0).kind() == FormulaKind::And);
  auto t = parse_term("a + b meet -2*c", {{"a", Sort::G}, {"b", Sort::G}, {"c", Sort::G}});
  CHECK(t.kind() == TermKind::Add);
  CHECK(t.kid(1).kind() == TermKind::GMeet);
  CHECK(t.kid(1).kid(1).kind() == TermKind::IntScale);
  CHECK(t.kid(1).kid(1).scalar() == Rational(-2));
  auto paren = parse("(a <= b) & ((P(a) cap top) = top)");
  CHECK(paren.kind() == FormulaKind::And);
}

TEST_CASE("sugar") {
  auto lt = parse("x < y", {{"x", Sort::G}});
  CHECK(lt == conj(gleq(gvar("x"), gvar("y")), negation(geq(gvar("x"), gvar("y")))));
  auto iff = parse("true <-> false");
  CHECK(iff == conj(implies(truef(), falsef()), implies(falsef(), truef())));
  auto multi = parse("exists a:G, l:L. P(a) = l");
  CHECK(multi.var() == "a");
  CHECK(multi.body().var() == "l");
}

TEST_CASE("print round trip") {
  const char* samples[] = {
      "forall v:G. exists a:G. a + a = v",
      "forall x:L. bot < x -> exists y:L. bot < y & y < x",
      "exists a:G. P(a - x) = top & ~(P(-a) cap compl(l) << bot) | x meet (y join -z) <= 2*x",
      "(exists a:G. a <= x) & forall l:L. l cup top = top",
      "~~(x - (y - z) <= 0) -> (true -> false) -> x = x",
      "-(-x) + -3*(x + y) = 0",
  };
  for (const char* s : samples) {
    auto f = parse(s);
    CHECK(parse(print(f)) == f);
  }
  CHECK(print(parse("x - y <= 0")) == "x - y <= 0");
}

TEST_CASE("parse_many") {
  auto fs = parse_many("# header\nx <= y\n\nP(x) = top\n");
  CHECK(fs.size() == 2);
  auto gs = parse_many("x <= y;\n  y <= x ; ");
  CHECK(gs.size() == 2);
}

TEST_CASE("nnf and renaming") {
  NameSupply names;
  auto f = parse("~(forall x:L. x = top -> exists a:G. P(a) << x)");
  names.reserve_all(f);
  auto r = rename_apart(f, names);
  auto n = nnf(r);
  CHECK(n.kind() == FormulaKind::Exists);
  CHECK(n.body().kind() == FormulaKind::And);
  CHECK(n.body().kid(1).kind() == FormulaKind::Forall);
  CHECK(n.body().kid(1).body().kind() == FormulaKind::Not);
}

TEST_CASE("rational scalars") {
  const SortContext ctx{{"a", Sort::G}};
  Term t = parse_term("1/2*a", ctx);
  CHECK(t.kind() == TermKind::RatScale);
  CHECK(t.scalar() == Rational(1, 2));
  CHECK(parse_term("-3/4*a", ctx).scalar() == Rational(-3, 4));
  CHECK(parse_term("4/2*a", ctx).kind() == TermKind::IntScale);
  CHECK(print(t) == "1/2*a");
  CHECK(kind_of([&] { parse_term("1/0*a", ctx); }) == ErrorKind::SyntaxError);
}

TEST_CASE("random formulas survive print and parse") {
  Rng rng(seed_from_env(23), "syntax round trip");
  gen::TwoSortedShape shape;
  shape.group_params = {"a", "b"};
  for (int i = 0; i < 300; ++i) {
    Formula f = gen::two_sorted_formula(rng, shape);
    const std::string text = print(f);
    INFO(text);
    SortContext ctx{{"a", Sort::G}, {"b", Sort::G}, {"l", Sort::L}};
    CHECK(parse(text, ctx) == f);
  }
  for (int i = 0; i < 100; ++i) {
    Formula s = gen::lattice_sentence(rng);
    CHECK(parse(print(s)) == s);
  }
}
