#include "doctest.h"

#include "dvlg/error.hpp"
#include "dvlg/oracle.hpp"
#include "dvlg/parser.hpp"
#include "dvlg/random.hpp"

using namespace dvlg;
using namespace dvlg::oracle;
using dvlg::logic::parse;

namespace {

bool decide(const char* text, std::size_t n, const Assignment& env = {}) {
  return decide_finite(FinStdStructure(n), parse(text), env);
}

}  // namespace

TEST_CASE("eval_qf examples") {
  Assignment env;
  env.group_env["f"] = GroupVector{1, -1, 0};
  env.group_env["g"] = GroupVector{-1, 1, 0};
  env.group_env["h"] = GroupVector{1, 2, 3};
  env.group_env["k"] = GroupVector{1, 2, 2};
  env.lattice_env["c"] = SubsetL::from_indices(3, {0, 2});
  FinStdStructure s(3);
  CHECK(eval_qf(s, env, parse("P(f) << c")));
  CHECK_FALSE(eval_qf(s, env, parse("h <= k")));
  CHECK(eval_qf(s, env, parse("P(f) cap P(g) << P(f + g)")));
  CHECK_THROWS_AS(eval_qf(s, env, parse("P(zz) = top")), Error);
}

TEST_CASE("decide_finite examples") {
  CHECK(decide("forall l:L. exists a:G. P(a) = l", 2));
  CHECK_FALSE(decide("forall x:L. bot < x -> exists y:L. bot < y & y < x", 2));
  CHECK(decide("exists a:G. 0 <= a & ~(a = 0)", 1));
}

TEST_CASE("algebraic closure sentences hold in every finite standard structure") {
  const char* sentences[] = {
      "forall v:G. exists a:G. a + a = v",
      "forall v:G. exists a:G. 3*a = v",
      "forall w:L. exists x:L. w cup x = top & w cap x = bot",
      // patching: agreement on the overlap of two regions yields a common patch
      "forall f:G, g:G. forall c:L, d:L. c cap d << P(f - g) cap P(g - f) -> "
      "exists h:G. c << P(f - h) cap P(h - f) & d << P(g - h) cap P(h - g)",
  };
  for (std::size_t n = 1; n <= 3; ++n)
    for (const char* s : sentences) {
      INFO(s << " n=" << n);
      CHECK(decide(s, n));
    }
}

TEST_CASE("resource limits") {
  CHECK_THROWS_AS(decide("exists a:G. a = a", 5), Error);
  Limits tight;
  tight.max_quantifiers = 1;
  CHECK_THROWS_AS(decide_finite(FinStdStructure(1), parse("exists a:G, b:G. a = b"), {}, tight), Error);
}

TEST_CASE("decide_finite agrees with eval_qf on quantifier-free inputs") {
  Rng rng(17, "oracle-qf");
  const char* formulas[] = {
      "x meet y <= z | P(x - y) << l",
      "~(P(x) cap compl(l) = bot) & 2*x join -y <= z + x",
      "P(x meet -y) = P(z) cup l -> x = y",
      "P((x join y) + (z meet -x)) << compl(l) | ~(l = top)",
  };
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + rng.index(3);
    Assignment env;
    for (const char* v : {"x", "y", "z"}) env.group_env[v] = rng.vector(n);
    env.lattice_env["l"] = rng.subset(n);
    for (const char* f : formulas) {
      auto phi = parse(f);
      CHECK(decide_finite(FinStdStructure(n), phi, env) == eval_qf(FinStdStructure(n), env, phi));
    }
  }
}

TEST_CASE("decide_finite is invariant under permuting points") {
  Rng rng(19, "oracle-perm");
  auto phi = parse("exists a:G. P(a - x) cap l = l & P(y - a) cap m = m & ~(a = x)");
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 3;
    Assignment env, perm;
    for (const char* v : {"x", "y"}) env.group_env[v] = rng.vector(n);
    for (const char* v : {"l", "m"}) env.lattice_env[v] = rng.subset(n);
    const std::size_t p[3] = {2, 0, 1};
    for (const auto& [v, g] : env.group_env) {
      std::vector<Rational> out(n);
      for (std::size_t i = 0; i < n; ++i) out[p[i]] = g[i];
      perm.group_env[v] = GroupVector(out);
    }
    for (const auto& [v, c] : env.lattice_env) {
      std::vector<std::size_t> idx;
      for (std::size_t i : c.indices()) idx.push_back(p[i]);
      perm.lattice_env[v] = SubsetL::from_indices(n, idx);
    }
    CHECK(decide_finite(FinStdStructure(n), phi, env) == decide_finite(FinStdStructure(n), phi, perm));
  }
}
