#include "doctest.h"

#include "dvlg/normalize.hpp"
#include "dvlg/oracle.hpp"
#include "dvlg/parser.hpp"
#include "dvlg/random.hpp"

using namespace dvlg;
using namespace dvlg::logic;

namespace {

const SortContext kCtx{{"x", Sort::G}, {"y", Sort::G}, {"z", Sort::G}, {"l", Sort::L}, {"m", Sort::L}};

Term t(const char* s) { return parse_term(s, kCtx); }

oracle::Assignment random_env(Rng& rng, std::size_t n) {
  oracle::Assignment env;
  for (const char* v : {"x", "y", "z"}) env.group_env[v] = rng.vector(n);
  for (const char* v : {"l", "m"}) env.lattice_env[v] = rng.subset(n);
  return env;
}

}  // namespace

TEST_CASE("linearize examples") {
  CHECK(to_term(linearize_group_term(t("(x meet y) + z"))) == t("(x + z) meet (y + z)"));
  CHECK(to_term(linearize_group_term(t("-(x meet y)"))) == t("-x join -y"));
  CHECK(to_term(linearize_group_term(t("2*(x join y)"))) == t("2*x join 2*y"));
}

TEST_CASE("push_valuation examples") {
  CHECK(push_valuation(t("P(x meet y)")) == t("P(x) cap P(y)"));
  CHECK(push_valuation(t("P(3*x)")) == t("P(x)"));
  CHECK(push_valuation(t("P(2*x join 4*y)")) == t("P(x) cup P(y)"));
  CHECK(push_valuation(t("P(x - x)")) == t("top"));
  CHECK(push_valuation(t("P(-2*x + 4*y)")) == t("P(2*y - x)"));
}

TEST_CASE("group atoms become lattice atoms") {
  CHECK(group_atoms_to_lattice(parse("x <= y", kCtx)) == parse("P(y - x) = top", kCtx));
  CHECK(push_valuation(group_atoms_to_lattice(parse("0 <= x", kCtx))) == parse("P(x) = top", kCtx));
  CHECK(group_atoms_to_lattice(parse("x = y", kCtx)) == parse("P(y - x) = top & P(x - y) = top", kCtx));
}

TEST_CASE("remove_complement examples") {
  auto r = remove_complement(parse("compl(l) cap m = bot", kCtx));
  CHECK(print(r) == "exists b_1:L. b_1 cup l = top & b_1 cap l = bot & b_1 cap m = bot");
  auto same = parse("P(x) cap l = m", kCtx);
  CHECK(remove_complement(same) == same);
  auto dbl = remove_complement(parse("compl(compl(l)) = l", kCtx));
  CHECK(quantifier_count(dbl) == 2);
  CHECK_FALSE(mentions_compl(dbl));
}

TEST_CASE("to_prenex examples") {
  auto f = to_prenex(parse("(exists a:G. a <= x) & y <= x", kCtx));
  CHECK(f.kind() == FormulaKind::Exists);
  CHECK(f.body().kind() == FormulaKind::And);
  auto g = to_prenex(parse("~forall k:L. k = l", kCtx));
  CHECK(g.kind() == FormulaKind::Exists);
  CHECK(g.body().kind() == FormulaKind::Not);
  auto h = to_prenex(parse("forall a:G. exists k:L. P(a) = k", kCtx));
  CHECK(h.kind() == FormulaKind::Forall);
  CHECK(h.body().kind() == FormulaKind::Exists);
  CHECK(is_quantifier_free(h.body().body()));
}

TEST_CASE("rewrites preserve truth in finite standard structures") {
  Rng rng(23, "normalize-semantics");
  const char* terms[] = {"(x meet y) + z", "-(x join -y) + 2*(z meet x)", "3*(x meet (y join z)) - (x join z)",
                         "-(-(x meet y) join (z + x)) meet y"};
  const char* lattice_terms[] = {"P((x meet y) + z) cup l", "P(-(x join y)) cap P(2*z meet -x)",
                                 "compl(P(x - (y join z)) cap m)"};
  const char* formulas[] = {"x meet y <= z", "x + y = z join x", "P(x) cap l = m | x <= y",
                            "compl(l) cap P(x) << m", "compl(compl(l) cup P(y)) = m cap l"};
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 3;
    auto env = random_env(rng, n);
    for (const char* s : terms) {
      Term a = t(s);
      CHECK(oracle::eval_group_term(a, env, n) == oracle::eval_group_term(to_term(linearize_group_term(a)), env, n));
    }
    for (const char* s : lattice_terms) {
      Term a = t(s);
      CHECK(oracle::eval_lattice_term(a, env, n) == oracle::eval_lattice_term(push_valuation(a), env, n));
    }
    for (const char* s : formulas) {
      auto f = parse(s, kCtx);
      const bool truth = oracle::eval_qf(FinStdStructure(n), env, f);
      CHECK(oracle::eval_qf(FinStdStructure(n), env, group_atoms_to_lattice(f)) == truth);
      CHECK(oracle::decide_finite(FinStdStructure(n), remove_complement(f), env) == truth);
      CHECK(oracle::decide_finite(FinStdStructure(n), simplify(push_valuation(f)), env) == truth);
    }
  }
}
