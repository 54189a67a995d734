#pragma once

// The countable existentially closed model: functions N -> Q with period 2^k
// for some k, together with the periodic subsets of N as its lattice sort.
// It is the direct limit of Stan(Q^{2^n}) along the duplication maps.

#include <cstddef>
#include <vector>

#include "dvlg/core_algebra.hpp"
#include "dvlg/rational.hpp"

namespace dvlg::periodic {

/// A 2^k-periodic function, stored by one period in normalized form.
class PeriodicFn {
 public:
  PeriodicFn() : vals_{Rational(0)} {}
  static PeriodicFn constant(const Rational& c);

  unsigned k() const { return k_; }
  std::size_t period() const { return std::size_t{1} << k_; }
  const std::vector<Rational>& vals() const { return vals_; }
  const Rational& at(std::size_t i) const { return vals_[i & (period() - 1)]; }
  /// One period of the function at exponent k' >= k().
  std::vector<Rational> lifted(unsigned k) const;

  bool is_nonneg() const;
  bool is_zero() const { return k_ == 0 && vals_[0].is_zero(); }

  friend bool operator==(const PeriodicFn&, const PeriodicFn&) = default;

 private:
  friend PeriodicFn normalize(unsigned k, std::vector<Rational> vals);
  unsigned k_ = 0;
  std::vector<Rational> vals_;
};

/// A 2^k-periodic subset of N, stored by one period in normalized form.
class PeriodicSet {
 public:
  PeriodicSet() : mask_{false} {}
  static PeriodicSet top();
  static PeriodicSet bottom() { return PeriodicSet(); }
  static PeriodicSet from_indices(unsigned k, const std::vector<std::size_t>& indices);

  unsigned k() const { return k_; }
  std::size_t period() const { return std::size_t{1} << k_; }
  const std::vector<bool>& mask() const { return mask_; }
  bool contains(std::size_t i) const { return mask_[i & (period() - 1)]; }
  std::vector<bool> lifted(unsigned k) const;
  std::vector<std::size_t> indices() const;

  bool is_empty() const { return k_ == 0 && !mask_[0]; }
  bool is_full() const { return k_ == 0 && mask_[0]; }

  friend bool operator==(const PeriodicSet&, const PeriodicSet&) = default;

 private:
  friend PeriodicSet normalize_set(unsigned k, std::vector<bool> mask);
  unsigned k_ = 0;
  std::vector<bool> mask_;
};

/// An element of the stage Q^{I_n}; deliberately not normalized.
struct StageVector {
  unsigned n = 0;
  std::vector<Rational> vals;
};

/// An element of the stage lattice P(I_n).
struct StageSet {
  unsigned n = 0;
  std::vector<bool> mask;
  friend bool operator==(const StageSet&, const StageSet&) = default;
};

/// Halves the period while the list is a doubled copy. Throws BadLength unless |vals| = 2^k.
PeriodicFn normalize(unsigned k, std::vector<Rational> vals);
PeriodicSet normalize_set(unsigned k, std::vector<bool> mask);

PeriodicFn periodic_op(GroupOp kind, const PeriodicFn& f, const PeriodicFn& g);
PeriodicFn periodic_op(GroupOp kind, const PeriodicFn& f);
PeriodicFn scale(const Rational& q, const PeriodicFn& f);

inline PeriodicFn operator+(const PeriodicFn& f, const PeriodicFn& g) { return periodic_op(GroupOp::Add, f, g); }
inline PeriodicFn operator-(const PeriodicFn& f) { return periodic_op(GroupOp::Neg, f); }
inline PeriodicFn operator-(const PeriodicFn& f, const PeriodicFn& g) { return f + (-g); }
inline PeriodicFn meet(const PeriodicFn& f, const PeriodicFn& g) { return periodic_op(GroupOp::Meet, f, g); }
inline PeriodicFn join(const PeriodicFn& f, const PeriodicFn& g) { return periodic_op(GroupOp::Join, f, g); }

PeriodicSet set_op(SubsetOp kind, const PeriodicSet& c, const PeriodicSet& d);
PeriodicSet set_op(SubsetOp kind, const PeriodicSet& c);
bool below(const PeriodicSet& c, const PeriodicSet& d);

inline PeriodicSet operator&(const PeriodicSet& c, const PeriodicSet& d) { return set_op(SubsetOp::Meet, c, d); }
inline PeriodicSet operator|(const PeriodicSet& c, const PeriodicSet& d) { return set_op(SubsetOp::Join, c, d); }
inline PeriodicSet operator~(const PeriodicSet& c) { return set_op(SubsetOp::Complement, c); }

/// f <= g pointwise.
bool leq(const PeriodicFn& f, const PeriodicFn& g);
/// f <= g and f != g.
bool less(const PeriodicFn& f, const PeriodicFn& g);

PeriodicSet periodic_valuation(const PeriodicFn& f);
PeriodicSet zero_set(const PeriodicFn& f);

StageSet stage_valuation(const StageVector& v);
StageVector alpha_embed(const StageVector& v);
StageSet beta_embed(const StageSet& c);
PeriodicFn to_limit(const StageVector& v);
PeriodicSet to_limit(const StageSet& c);

/// A set strictly between the empty set and c. Throws EmptyInput on c = bottom.
PeriodicSet split_nonempty(const PeriodicSet& c);

/// P(-a) = P(-b) for a, b >= 0.
bool polar_equiv(const PeriodicFn& a, const PeriodicFn& b);

/// Least n >= 1 for which n*f < g fails, given 0 < f and 0 < g.
unsigned long archimedean_bound(const PeriodicFn& f, const PeriodicFn& g);

/// (shift f)(i) = f(i + 1).
PeriodicFn shift(const PeriodicFn& f);
PeriodicSet induced_lattice_auto(const PeriodicSet& c);

}  // namespace dvlg::periodic
