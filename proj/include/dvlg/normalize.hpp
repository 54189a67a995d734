#pragma once

// Rewrites that bring formulas into the shape the eliminators work on:
// lattice-free linear group terms, valuations of primitive linear terms,
// lattice-only atoms, complement-free and prenex forms.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dvlg/rational.hpp"
#include "dvlg/syntax.hpp"

namespace dvlg::logic {

/// sum of q_v * v over group variables; the empty map is 0.
class LinearGroupTerm {
 public:
  LinearGroupTerm() = default;
  static LinearGroupTerm variable(const std::string& name);

  const std::map<std::string, Rational>& coeffs() const { return coeffs_; }
  Rational coeff(const std::string& name) const;
  bool is_zero() const { return coeffs_.empty(); }
  bool mentions(const std::string& name) const { return coeffs_.count(name) != 0; }

  LinearGroupTerm operator+(const LinearGroupTerm& o) const;
  LinearGroupTerm operator-(const LinearGroupTerm& o) const;
  LinearGroupTerm operator-() const { return scaled(Rational(-1)); }
  LinearGroupTerm scaled(const Rational& q) const;
  LinearGroupTerm without(const std::string& name) const;

  /// Positive multiple with integer coefficients of gcd 1.
  LinearGroupTerm primitive() const;
  /// Positive coefficients first, variables in name order; IntScale where integral, RatScale otherwise.
  Term to_term() const;

  friend bool operator==(const LinearGroupTerm&, const LinearGroupTerm&) = default;
  friend bool operator<(const LinearGroupTerm& a, const LinearGroupTerm& b);

 private:
  std::map<std::string, Rational> coeffs_;
};

using MeetOfLinear = std::vector<LinearGroupTerm>;
/// Join over meets of linear terms.
using JoinOfMeets = std::vector<MeetOfLinear>;

JoinOfMeets linearize_group_term(const Term& t);
Term to_term(const JoinOfMeets& jm);
/// The linear term denoted by t if t has no meet or join.
std::optional<LinearGroupTerm> as_linear(const Term& t);

/// Every P applies to a primitive linear term afterwards; P(0) becomes top.
Term push_valuation(const Term& t);
Formula push_valuation(const Formula& f);

/// s <= t becomes P(t - s) = top; s = t becomes both directions.
Formula group_atoms_to_lattice(const Formula& f);

/// Replaces each compl(s) by a fresh b with b cup s = top and b cap s = bot.
Formula remove_complement(const Formula& f, NameSupply& names);
Formula remove_complement(const Formula& f);

Formula to_prenex(const Formula& f, NameSupply& names);
Formula to_prenex(const Formula& f);

/// Identities valid in every nontrivial Boolean algebra and every l-group.
Term simplify(const Term& t);
Formula simplify(const Formula& f);

/// Flattened operands of nested And (or Or) nodes.
std::vector<Formula> conjuncts(const Formula& f);
std::vector<Formula> disjuncts(const Formula& f);

}  // namespace dvlg::logic
