#pragma once

// Finite standard structures Stan(Q^X) over the ground set X = {0, ..., n-1}:
// the l-group Q^X, the powerset lattice P(X) and the standard valuation
// f |-> {x | f(x) >= 0}.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "dvlg/rational.hpp"

namespace dvlg {

class GroupVector {
 public:
  GroupVector() = default;
  explicit GroupVector(std::vector<Rational> values) : values_(std::move(values)) {}
  GroupVector(std::initializer_list<Rational> values) : values_(values) {}

  static GroupVector zero(std::size_t n) { return GroupVector(std::vector<Rational>(n)); }
  static GroupVector constant(std::size_t n, const Rational& c) {
    return GroupVector(std::vector<Rational>(n, c));
  }

  std::size_t size() const { return values_.size(); }
  const Rational& operator[](std::size_t i) const { return values_[i]; }
  Rational& operator[](std::size_t i) { return values_[i]; }
  std::span<const Rational> values() const { return values_; }

  /// f >= 0 in the pointwise order.
  bool is_nonneg() const;
  bool is_zero() const;

  friend bool operator==(const GroupVector&, const GroupVector&) = default;

 private:
  std::vector<Rational> values_;
};

/// A subset of {0, ..., width-1}; widths up to 64 are supported.
class SubsetL {
 public:
  static constexpr std::size_t kMaxWidth = 64;

  SubsetL() = default;
  SubsetL(std::size_t width, std::uint64_t bits);

  static SubsetL empty(std::size_t width) { return SubsetL(width, 0); }
  static SubsetL full(std::size_t width);
  static SubsetL from_indices(std::size_t width, std::span<const std::size_t> indices);
  static SubsetL from_indices(std::size_t width, std::initializer_list<std::size_t> indices) {
    return from_indices(width, std::span<const std::size_t>(indices.begin(), indices.size()));
  }

  std::size_t width() const { return width_; }
  std::uint64_t bits() const { return bits_; }
  bool contains(std::size_t i) const { return (bits_ >> i) & 1U; }
  bool is_empty() const { return bits_ == 0; }
  bool is_full() const { return bits_ == full_mask(width_); }
  std::vector<std::size_t> indices() const;

  static std::uint64_t full_mask(std::size_t width) {
    return width >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << width) - 1);
  }

  friend bool operator==(const SubsetL&, const SubsetL&) = default;

 private:
  std::size_t width_ = 0;
  std::uint64_t bits_ = 0;
};

/// Stan(Q^X) with |X| = ground_size.
struct FinStdStructure {
  explicit FinStdStructure(std::size_t n);
  std::size_t ground_size;
};

enum class GroupOp { Add, Neg, Meet, Join };
enum class SubsetOp { Meet, Join, Complement };

GroupVector pointwise_op(GroupOp kind, const GroupVector& f, const GroupVector& g);
GroupVector pointwise_op(GroupOp kind, const GroupVector& f);

inline GroupVector operator+(const GroupVector& f, const GroupVector& g) { return pointwise_op(GroupOp::Add, f, g); }
inline GroupVector operator-(const GroupVector& f) { return pointwise_op(GroupOp::Neg, f); }
inline GroupVector operator-(const GroupVector& f, const GroupVector& g) { return f + (-g); }
inline GroupVector meet(const GroupVector& f, const GroupVector& g) { return pointwise_op(GroupOp::Meet, f, g); }
inline GroupVector join(const GroupVector& f, const GroupVector& g) { return pointwise_op(GroupOp::Join, f, g); }

GroupVector scale(const Rational& q, const GroupVector& f);

/// {x | f(x) >= 0}
SubsetL std_valuation(const GroupVector& f);

SubsetL subset_op(SubsetOp kind, const SubsetL& c, const SubsetL& d);
SubsetL subset_op(SubsetOp kind, const SubsetL& c);
/// c is contained in d.
bool below(const SubsetL& c, const SubsetL& d);

inline SubsetL operator&(const SubsetL& c, const SubsetL& d) { return subset_op(SubsetOp::Meet, c, d); }
inline SubsetL operator|(const SubsetL& c, const SubsetL& d) { return subset_op(SubsetOp::Join, c, d); }
inline SubsetL operator~(const SubsetL& c) { return subset_op(SubsetOp::Complement, c); }

/// {x | f(x) = g(x)}
SubsetL agreement_set(const GroupVector& f, const GroupVector& g);

/// h with h = f on c, h = g on d and 0 elsewhere. Requires f = g on c & d.
GroupVector patch(const SubsetL& c, const SubsetL& d, const GroupVector& f, const GroupVector& g);

/// Splits c >= 0 into disjoint f + g = c with a & g = 0 and f & b = 0,
/// given a, b >= 0 and a & b = 0.
std::pair<GroupVector, GroupVector> ac_split(const GroupVector& a, const GroupVector& b, const GroupVector& c);

/// b >= 0 with a & b = 0 and a | b a weak order unit (1 on the zero set of a).
GroupVector complement_witness(const GroupVector& a);

bool is_weak_order_unit(const GroupVector& f);

/// The diagonal embedding Stan(Q^X) -> Stan(Q^(X x {0,1})); (x, i) is stored at x + i*n.
std::pair<GroupVector, SubsetL> double_embed(const GroupVector& f, const SubsetL& c);

}  // namespace dvlg
