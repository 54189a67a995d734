#pragma once

// The theory of nontrivial atomless Boolean algebras on the lattice sort:
// quantifier elimination, decision, and a bounded check in the algebra of
// finite unions of half-open rational intervals in [0, 1).

#include <string>
#include <utility>
#include <vector>

#include "dvlg/rational.hpp"
#include "dvlg/syntax.hpp"

namespace dvlg::ba {

/// Quantifier-free equivalent in every nontrivial atomless Boolean algebra.
/// P-terms are opaque constants. Throws Error(NotLatticeSorted).
logic::Formula ba_qe(const logic::Formula& f);

/// Throws Error(NotSentence | NotLatticeSorted).
bool ba_decide(const logic::Formula& sentence);

/// Truth of a variable-free lattice formula with bot != top.
bool evaluate_closed(const logic::Formula& f);

/// Emptiness pattern of the 2^m minterms of variables y_1..y_m; minterm i
/// takes y_j when bit j of i is set and compl(y_j) otherwise.
struct MintermStatus {
  enum class Status { Empty, Nonempty, Free };
  std::vector<std::string> variables;
  std::vector<Status> status;
  /// Each set lists minterms of which at least one is nonempty.
  std::vector<std::vector<bool>> nonempty_sets;
};

/// Minterm-based elimination: the satisfiable emptiness patterns of a
/// quantifier-free formula, projected along one variable by the split rule.
logic::Formula ba_qe_minterm(const logic::Formula& f);

class IntervalSet {
 public:
  IntervalSet() = default;
  static IntervalSet top();
  static IntervalSet bottom() { return IntervalSet(); }
  /// Canonicalizes: sorts, clips to [0,1), merges adjacent or overlapping pieces.
  static IntervalSet from(std::vector<std::pair<Rational, Rational>> intervals);

  const std::vector<std::pair<Rational, Rational>>& intervals() const { return iv_; }
  bool is_empty() const { return iv_.empty(); }

  IntervalSet meet(const IntervalSet& o) const;
  IntervalSet join(const IntervalSet& o) const;
  IntervalSet complement() const;
  bool below(const IntervalSet& o) const { return meet(o) == *this; }
  /// The first interval cut at its midpoint; bottom stays bottom.
  IntervalSet proper_half() const;
  std::string str() const;

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

 private:
  std::vector<std::pair<Rational, Rational>> iv_;
};

/// Truth in the interval algebra, searching 3^m canonical witnesses per
/// quantifier. Throws Error(DepthExceeded) unless quantifier depth <= depth <= 4.
bool interval_check(const logic::Formula& sentence, unsigned depth);

}  // namespace dvlg::ba
