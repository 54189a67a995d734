#include "doctest.h"

#include "dvlg/error.hpp"
#include "dvlg/periodic.hpp"
#include "dvlg/random.hpp"

using namespace dvlg;
using namespace dvlg::periodic;

namespace {

PeriodicFn pf(unsigned k, std::vector<Rational> vals) { return normalize(k, std::move(vals)); }
PeriodicSet ps(unsigned k, std::vector<std::size_t> idx) { return PeriodicSet::from_indices(k, idx); }

// Scans n = 1, 2, ... for the first n where n*f < g fails.
unsigned long scan_bound(const PeriodicFn& f, const PeriodicFn& g) {
  for (unsigned long n = 1;; ++n)
    if (!less(scale(Rational(static_cast<long>(n)), f), g)) return n;
}

}  // namespace

TEST_CASE("normalize") {
  auto a = pf(2, {3, 5, 3, 5});
  CHECK(a.k() == 1);
  CHECK(a.vals() == std::vector<Rational>{3, 5});
  CHECK(pf(1, {3, 5}).k() == 1);
  CHECK(pf(2, {1, 2, 3, 4}).k() == 2);
  CHECK(pf(3, std::vector<Rational>(8, 4)).k() == 0);
  CHECK_THROWS_AS(pf(2, {1, 2, 3}), Error);
}

TEST_CASE("pointwise operations lift to a common period") {
  CHECK(meet(pf(0, {2}), pf(1, {1, 3})) == pf(1, {1, 2}));
  CHECK(pf(1, {1, -1}) + pf(1, {-1, 1}) == PeriodicFn());
  CHECK(-pf(1, {1, 0}) == pf(1, {-1, 0}));
}

TEST_CASE("valuation and zero sets") {
  CHECK(periodic_valuation(pf(2, {1, -1, 0, -2})) == ps(2, {0, 2}));
  CHECK(periodic_valuation(PeriodicFn::constant(-1)).is_empty());
  CHECK(periodic_valuation(PeriodicFn()).is_full());
  CHECK(zero_set(pf(1, {0, -3})) == ps(1, {0}));
  CHECK(zero_set(PeriodicFn()).is_full());
  CHECK(zero_set(pf(2, {1, 2, 3, 4})).is_empty());
}

TEST_CASE("stage maps") {
  StageVector v{1, {1, -1}};
  auto a = alpha_embed(v);
  CHECK(a.n == 2);
  CHECK(a.vals == std::vector<Rational>{1, -1, 1, -1});
  auto b = beta_embed(StageSet{1, {true, false}});
  CHECK(b.n == 2);
  CHECK(b.mask == std::vector<bool>{true, false, true, false});
  StageVector w{1, {-1, 2}};
  CHECK(stage_valuation(alpha_embed(w)) == beta_embed(stage_valuation(w)));
  CHECK(stage_valuation(alpha_embed(w)).mask == std::vector<bool>{false, true, false, true});
  CHECK(to_limit(alpha_embed(w)) == to_limit(w));
}

TEST_CASE("split_nonempty") {
  CHECK(split_nonempty(PeriodicSet::top()) == ps(1, {0}));
  auto c = split_nonempty(ps(1, {0}));
  CHECK(c == ps(2, {0}));
  CHECK(below(c, ps(1, {0})));
  CHECK_FALSE(c == ps(1, {0}));
  CHECK(split_nonempty(ps(1, {0, 1})) == ps(1, {0}));
  CHECK_THROWS_AS(split_nonempty(PeriodicSet::bottom()), Error);
}

TEST_CASE("polar equivalence") {
  CHECK(polar_equiv(pf(1, {1, 0}), pf(1, {2, 0})));
  CHECK_FALSE(polar_equiv(pf(0, {1}), pf(1, {1, 0})));
  CHECK(polar_equiv(pf(2, {1, 0, 2, 0}), pf(2, {1, 0, 2, 0})));
  CHECK_THROWS_AS(polar_equiv(pf(0, {-1}), pf(0, {1})), Error);
}

TEST_CASE("archimedean bound") {
  CHECK(archimedean_bound(pf(0, {1}), pf(0, {5})) == 5);
  CHECK(archimedean_bound(pf(1, {1, 2}), pf(1, {3, 10})) == 4);
  CHECK(archimedean_bound(pf(1, {1, 2}), pf(1, {3, 10})) == scan_bound(pf(1, {1, 2}), pf(1, {3, 10})));
  CHECK(archimedean_bound(pf(1, {0, 1}), pf(0, {1})) == scan_bound(pf(1, {0, 1}), pf(0, {1})));
  CHECK(archimedean_bound(pf(1, {0, 1}), pf(0, {1})) == 2);
  CHECK_THROWS_AS(archimedean_bound(PeriodicFn(), pf(0, {1})), Error);
  Rng rng(3, "archimedean");
  for (int trial = 0; trial < 300; ++trial) {
    auto f = rng.nonneg_periodic_fn(4), g = rng.nonneg_periodic_fn(4);
    if (f.is_zero() || g.is_zero()) continue;
    CHECK(archimedean_bound(f, g) == scan_bound(f, g));
  }
}

TEST_CASE("shift automorphism") {
  CHECK(shift(pf(2, {1, 2, 3, 4})) == pf(2, {2, 3, 4, 1}));
  CHECK(induced_lattice_auto(ps(1, {0})) == ps(1, {1}));
  auto f = pf(2, {1, -1, 2, -2});
  CHECK(periodic_valuation(shift(f)) == ps(2, {1, 3}));
  CHECK(periodic_valuation(shift(f)) == induced_lattice_auto(periodic_valuation(f)));
}

TEST_CASE("operations do not depend on the lifting period") {
  Rng rng(5, "periodic-lift");
  for (int trial = 0; trial < 200; ++trial) {
    auto f = rng.periodic_fn(3), g = rng.periodic_fn(3);
    const unsigned k = std::max(f.k(), g.k()) + 1;
    auto a = f.lifted(k), b = g.lifted(k);
    std::vector<Rational> sum;
    for (std::size_t i = 0; i < a.size(); ++i) sum.push_back(a[i] + b[i]);
    CHECK(normalize(k, sum) == f + g);
    auto again = normalize(f.k(), f.vals());
    CHECK(again == f);
    for (std::size_t i = 0; i < (std::size_t{1} << (k + 1)); ++i) CHECK(f.at(i) == a[i % a.size()]);
  }
}
