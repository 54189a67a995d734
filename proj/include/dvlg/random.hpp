#pragma once

// Named, splittable random streams. Every stream is derived from one root
// seed and a path of names, so adding a consumer never perturbs another.

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "dvlg/core_algebra.hpp"
#include "dvlg/periodic.hpp"
#include "dvlg/rational.hpp"

namespace dvlg {

class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::string_view name = "root");

  Rng split(std::string_view name) const;
  std::uint64_t seed() const { return key_; }

  long uniform(long lo, long hi);
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform(0, static_cast<long>(n) - 1)); }
  bool coin(double p = 0.5);
  /// p/q with |p| <= num_bound, 1 <= q <= den_bound.
  Rational rational(long num_bound = 4, long den_bound = 3);
  Rational nonneg_rational(long num_bound = 4, long den_bound = 3);

  GroupVector vector(std::size_t n);
  GroupVector nonneg_vector(std::size_t n, double zero_prob = 0.3);
  SubsetL subset(std::size_t n);
  periodic::PeriodicFn periodic_fn(unsigned max_k);
  periodic::PeriodicFn nonneg_periodic_fn(unsigned max_k, double zero_prob = 0.3);
  periodic::PeriodicSet periodic_set(unsigned max_k);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::uint64_t key_;
  std::mt19937_64 engine_;
};

/// Root seed: DVLG_SEED if set, otherwise the fallback.
std::uint64_t seed_from_env(std::uint64_t fallback);

}  // namespace dvlg
