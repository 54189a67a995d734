#include "doctest.h"

#include "dvlg/core_algebra.hpp"
#include "dvlg/error.hpp"
#include "dvlg/random.hpp"

using namespace dvlg;

namespace {

GroupVector v(std::initializer_list<Rational> xs) { return GroupVector(xs); }
SubsetL s(std::size_t n, std::initializer_list<std::size_t> idx) { return SubsetL::from_indices(n, idx); }

bool throws_kind(ErrorKind k, const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind() == k;
  }
  return false;
}

}  // namespace

TEST_CASE("rational canonical form") {
  Rational r(6, -4);
  CHECK(r.num() == -3);
  CHECK(r.den() == 2);
  CHECK(Rational::parse("-3/2") == r);
  CHECK(Rational::parse("4/2").str() == "2");
  CHECK_THROWS(Rational(1, 0));
  CHECK_THROWS(Rational::parse("1/0"));
  CHECK_THROWS(Rational::parse("x"));
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(0));
}

TEST_CASE("pointwise operations") {
  CHECK(meet(v({1, -2, 3}), v({0, 5, -1})) == v({0, -2, -1}));
  CHECK(v({1, 2, 3}) + v({-1, -2, -3}) == v({0, 0, 0}));
  CHECK(join(v({1, -2, 3}), v({0, 5, -1})) == v({1, 5, 3}));
  CHECK(throws_kind(ErrorKind::LengthMismatch, [] { return v({1}) + v({1, 2}); }));
}

TEST_CASE("scale") {
  CHECK(scale(Rational(1, 2), v({2, -4, 6})) == v({1, -2, 3}));
  CHECK(scale(0, v({7, 9})) == v({0, 0}));
  CHECK(scale(3, v({1, 0, -1})) == v({3, 0, -3}));
}

TEST_CASE("standard valuation") {
  CHECK(std_valuation(v({1, Rational(-1, 2), 0})) == s(3, {0, 2}));
  CHECK(std_valuation(v({0, 0, 0})).is_full());
  CHECK(std_valuation(v({-1, -1, -1})).is_empty());
}

TEST_CASE("subset operations") {
  CHECK((s(3, {0, 1}) & s(3, {1, 2})) == s(3, {1}));
  CHECK(~s(3, {0}) == s(3, {1, 2}));
  CHECK(below(SubsetL::empty(3), s(3, {2})));
  CHECK(throws_kind(ErrorKind::WidthMismatch, [] { return s(2, {0}) | s(3, {0}); }));
  CHECK(throws_kind(ErrorKind::WidthMismatch, [] { return SubsetL(2, 4); }));
}

TEST_CASE("patch") {
  CHECK(patch(s(3, {0, 1}), s(3, {1, 2}), v({3, 2, 9}), v({7, 2, 4})) == v({3, 2, 4}));
  CHECK(patch(s(3, {0}), s(3, {2}), v({1, 1, 1}), v({5, 5, 5})) == v({1, 0, 5}));
  CHECK(patch(s(3, {0, 1}), s(3, {0, 1}), v({1, 2, 3}), v({1, 2, 9})) == v({1, 2, 0}));
  CHECK(throws_kind(ErrorKind::PatchPreconditionViolated,
                    [] { return patch(s(2, {0}), s(2, {0}), v({1, 0}), v({2, 0})); }));
}

TEST_CASE("ac_split") {
  auto [f1, g1] = ac_split(v({1, 0, 0}), v({0, 2, 0}), v({3, 3, 3}));
  CHECK(f1 == v({3, 0, 0}));
  CHECK(g1 == v({0, 3, 3}));
  auto [f2, g2] = ac_split(v({0, 0, 0}), v({0, 0, 0}), v({1, 1, 1}));
  CHECK(f2 == v({0, 0, 0}));
  CHECK(g2 == v({1, 1, 1}));
  auto [f3, g3] = ac_split(v({2, 0, 1}), v({0, 3, 0}), v({4, 4, 4}));
  CHECK(f3 == v({4, 0, 4}));
  CHECK(g3 == v({0, 4, 0}));
  CHECK(throws_kind(ErrorKind::SplitPreconditionViolated, [] { return ac_split(v({1}), v({1}), v({1})); }));
  CHECK(throws_kind(ErrorKind::SplitPreconditionViolated, [] { return ac_split(v({1}), v({0}), v({-1})); }));
}

TEST_CASE("complement witness and weak order units") {
  CHECK(complement_witness(v({2, 0, 1})) == v({0, 1, 0}));
  CHECK(complement_witness(v({0, 0, 0})) == v({1, 1, 1}));
  CHECK(complement_witness(v({1, 1, 1})) == v({0, 0, 0}));
  CHECK(is_weak_order_unit(join(v({1, 1, 1}), complement_witness(v({1, 1, 1})))));
  CHECK(is_weak_order_unit(v({1, 1, 1})));
  CHECK(std_valuation(-v({1, 1, 1})).is_empty());
  CHECK_FALSE(is_weak_order_unit(v({1, 0, 1})));
  CHECK(std_valuation(-v({1, 0, 1})) == s(3, {1}));
  CHECK_FALSE(is_weak_order_unit(v({0, 0, 0})));
  CHECK(throws_kind(ErrorKind::NegativeInput, [] { return complement_witness(v({-1})); }));
  CHECK(throws_kind(ErrorKind::NegativeInput, [] { return is_weak_order_unit(v({-1})); }));
}

TEST_CASE("double embedding") {
  auto [f, c] = double_embed(v({1, -2}), s(2, {0}));
  CHECK(f == v({1, -2, 1, -2}));
  CHECK(c == s(4, {0, 2}));
  auto [z, t] = double_embed(v({0}), SubsetL::full(1));
  CHECK(z == v({0, 0}));
  CHECK(t.is_full());
  auto g = v({-1, 3});
  CHECK(std_valuation(double_embed(g, s(2, {})).first) == s(4, {1, 3}));
  CHECK(std_valuation(double_embed(g, s(2, {})).first) == double_embed(g, std_valuation(g)).second);
  CHECK(throws_kind(ErrorKind::WidthMismatch, [] { return double_embed(v({1}), s(2, {})); }));
}

TEST_CASE("FinStdStructure rejects the empty ground set") {
  CHECK(throws_kind(ErrorKind::PreconditionViolated, [] { return FinStdStructure(0); }));
  CHECK(FinStdStructure(3).ground_size == 3);
}

TEST_CASE("valuation laws on random vectors") {
  Rng rng(7, "core-valuation");
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng.index(4);
    auto f = rng.vector(n), g = rng.vector(n);
    for (long k = 1; k <= 5; ++k) CHECK(std_valuation(scale(k, f)) == std_valuation(f));
    if (f.is_nonneg()) CHECK(std_valuation(f).is_full());
    if (std_valuation(f).is_full()) CHECK(f.is_nonneg());
    CHECK(std_valuation(meet(f, g)) == (std_valuation(f) & std_valuation(g)));
    CHECK(std_valuation(join(f, g)) == (std_valuation(f) | std_valuation(g)));
    CHECK(below(std_valuation(f) & std_valuation(g), std_valuation(f + g)));
    CHECK(below(std_valuation(f + g), std_valuation(f) | std_valuation(g)));
    auto c = rng.subset(n);
    std::vector<Rational> ind;
    for (std::size_t i = 0; i < n; ++i) ind.push_back(c.contains(i) ? 1 : -1);
    CHECK(std_valuation(GroupVector(ind)) == c);
  }
}

TEST_CASE("double embedding is injective") {
  Rng rng(11, "core-embed");
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.index(4);
    auto f = rng.vector(n), g = rng.vector(n);
    auto c = rng.subset(n), d = rng.subset(n);
    auto [fi, ci] = double_embed(f, c);
    auto [gi, di] = double_embed(g, d);
    CHECK((fi == gi) == (f == g));
    CHECK((ci == di) == (c == d));
    CHECK(std_valuation(fi) == double_embed(f, std_valuation(f)).second);
  }
}
