#include "dvlg/random.hpp"

#include <cstdlib>
#include <string>

namespace dvlg {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t mix_name(std::uint64_t key, std::string_view name) {
  std::uint64_t h = splitmix(key);
  for (unsigned char c : name) h = splitmix(h ^ c);
  return h;
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::string_view name) : key_(mix_name(seed, name)), engine_(key_) {}

Rng Rng::split(std::string_view name) const {
  Rng child(0);
  child.key_ = mix_name(key_, name);
  child.engine_.seed(child.key_);
  return child;
}

long Rng::uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(engine_); }

bool Rng::coin(double p) { return std::bernoulli_distribution(p)(engine_); }

Rational Rng::rational(long num_bound, long den_bound) {
  return Rational(uniform(-num_bound, num_bound), uniform(1, den_bound));
}

Rational Rng::nonneg_rational(long num_bound, long den_bound) {
  return Rational(uniform(0, num_bound), uniform(1, den_bound));
}

GroupVector Rng::vector(std::size_t n) {
  std::vector<Rational> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(rational());
  return GroupVector(std::move(v));
}

GroupVector Rng::nonneg_vector(std::size_t n, double zero_prob) {
  std::vector<Rational> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(coin(zero_prob) ? Rational(0) : Rational(uniform(1, 4), uniform(1, 3)));
  return GroupVector(std::move(v));
}

SubsetL Rng::subset(std::size_t n) {
  return SubsetL(n, std::uniform_int_distribution<std::uint64_t>(0, SubsetL::full_mask(n))(engine_));
}

periodic::PeriodicFn Rng::periodic_fn(unsigned max_k) {
  const unsigned k = static_cast<unsigned>(uniform(0, max_k));
  std::vector<Rational> v;
  for (std::size_t i = 0; i < (std::size_t{1} << k); ++i) v.push_back(rational());
  return periodic::normalize(k, std::move(v));
}

periodic::PeriodicFn Rng::nonneg_periodic_fn(unsigned max_k, double zero_prob) {
  const unsigned k = static_cast<unsigned>(uniform(0, max_k));
  std::vector<Rational> v;
  for (std::size_t i = 0; i < (std::size_t{1} << k); ++i)
    v.push_back(coin(zero_prob) ? Rational(0) : Rational(uniform(1, 4), uniform(1, 3)));
  return periodic::normalize(k, std::move(v));
}

periodic::PeriodicSet Rng::periodic_set(unsigned max_k) {
  const unsigned k = static_cast<unsigned>(uniform(0, max_k));
  std::vector<bool> m;
  for (std::size_t i = 0; i < (std::size_t{1} << k); ++i) m.push_back(coin());
  return periodic::normalize_set(k, std::move(m));
}

std::uint64_t seed_from_env(std::uint64_t fallback) {
  if (const char* s = std::getenv("DVLG_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      return fallback;
    }
  }
  return fallback;
}

}  // namespace dvlg
