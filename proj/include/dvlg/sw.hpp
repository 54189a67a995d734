#pragma once

// Reduction of two-sorted formulas to the lattice sort: group quantifiers are
// eliminated pointwise by pairing lower and upper bounds, leaving a lattice
// formula chi over p_i = P(t_i).

#include <cstddef>
#include <string>
#include <vector>

#include "dvlg/normalize.hpp"
#include "dvlg/syntax.hpp"

namespace dvlg::sw {

enum class Mode { TPlus, EC };
const char* to_string(Mode m);
/// "tplus" or "ec"; throws Error(PreconditionViolated) otherwise.
Mode parse_mode(const std::string& s);

struct Bound {
  logic::Term region;
  logic::LinearGroupTerm bound;
  bool strict = false;
};

/// On each lower region the variable is >= (or >) the bound; on each upper
/// region it is <= (or <) the bound.
struct PrimitiveBlock {
  std::string variable;
  std::vector<Bound> lowers;
  std::vector<Bound> uppers;
};

/// Lattice condition equivalent to the existence of the variable.
/// Throws Error(NotPrimitive) if a region or bound mentions the variable.
logic::Formula eliminate_group_var(const PrimitiveBlock& block);

struct ReductionOutput {
  logic::Formula chi;
  std::vector<logic::Term> terms;
  std::vector<std::string> names;  // p_1..p_k as used in chi
  std::size_t k = 0;
  Mode mode = Mode::TPlus;
  std::size_t eliminations = 0;
  std::vector<std::string> trace;

  /// exists p_1..p_k:L. chi & p_1 = P(t_1) & ... & p_k = P(t_k)
  logic::Formula assemble() const;
};

/// Throws Error(SortError | UnsupportedFragment | ResourceLimit).
ReductionOutput reduce(const logic::Formula& f, Mode mode);

/// exists a:G over a lattice-atom formula in negation normal form.
logic::Formula eliminate_exists(const std::string& a, const logic::Formula& body, Mode mode,
                                logic::NameSupply& names);

/// Truth in every existentially closed densely valued l-group.
bool decide_ec(const logic::Formula& sentence);

/// Built from atoms with &, |, exists only.
bool is_positive_existential(const logic::Formula& f);

}  // namespace dvlg::sw
