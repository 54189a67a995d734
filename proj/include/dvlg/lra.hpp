#pragma once

// Linear rational arithmetic: constraints sum c_v * v + k (>= | > | =) 0,
// Boolean combinations of them, and Fourier-Motzkin elimination.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dvlg/rational.hpp"

namespace dvlg::lra {

using VarId = int;

class LinExpr {
 public:
  LinExpr() = default;
  explicit LinExpr(Rational constant) : constant_(std::move(constant)) {}
  static LinExpr variable(VarId v, Rational coeff = Rational(1));

  const std::vector<std::pair<VarId, Rational>>& coeffs() const { return coeffs_; }
  const Rational& constant() const { return constant_; }
  Rational coeff(VarId v) const;
  bool is_constant() const { return coeffs_.empty(); }

  LinExpr operator+(const LinExpr& o) const;
  LinExpr operator-(const LinExpr& o) const;
  LinExpr operator-() const { return scaled(Rational(-1)); }
  LinExpr scaled(const Rational& q) const;
  /// Replaces v by e.
  LinExpr substitute(VarId v, const LinExpr& e) const;

  friend bool operator==(const LinExpr&, const LinExpr&) = default;

 private:
  std::vector<std::pair<VarId, Rational>> coeffs_;  // sorted by variable, no zeros
  Rational constant_;
};

enum class Rel { Ge, Gt, Eq };

struct LinConstraint {
  LinExpr expr;
  Rel rel = Rel::Ge;

  bool is_constant() const { return expr.is_constant(); }
  /// Truth value of a variable-free constraint.
  bool holds() const;
  bool holds(const std::vector<std::pair<VarId, Rational>>& point) const;
  std::string str() const;
};

/// Scales to integer variable coefficients with gcd 1 (equalities: first coefficient positive).
LinConstraint normalized(const LinConstraint& c);

class LraFormula {
 public:
  enum class Kind { True, False, Atom, And, Or, Not };

  static LraFormula truth(bool b);
  static LraFormula atom(LinConstraint c);
  static LraFormula all(std::vector<LraFormula> kids);
  static LraFormula any(std::vector<LraFormula> kids);
  static LraFormula negate(const LraFormula& f);

  Kind kind() const { return node_->kind; }
  bool is_true() const { return kind() == Kind::True; }
  bool is_false() const { return kind() == Kind::False; }
  bool is_constant() const { return is_true() || is_false(); }
  const LinConstraint& constraint() const { return node_->atom; }
  const std::vector<LraFormula>& kids() const { return node_->kids; }
  std::size_t size() const;

 private:
  struct Node {
    Kind kind;
    LinConstraint atom;
    std::vector<LraFormula> kids;
  };
  explicit LraFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

LraFormula operator&&(const LraFormula& a, const LraFormula& b);
LraFormula operator||(const LraFormula& a, const LraFormula& b);
LraFormula operator!(const LraFormula& a);

using Conjunction = std::vector<LinConstraint>;
using Dnf = std::vector<Conjunction>;

/// Drops duplicates and dominated parallel constraints; nullopt if trivially infeasible.
std::optional<Conjunction> tidy(Conjunction c);

/// Throws Error(ResourceLimit) when more than `limit` disjuncts arise.
Dnf to_dnf(const LraFormula& f, std::size_t limit = 200000);
LraFormula from_dnf(const Dnf& d);

/// Eliminates v from a conjunction; nullopt if the result is infeasible.
std::optional<Conjunction> fm_eliminate(VarId v, Conjunction c);
Dnf fm_eliminate(VarId v, const Dnf& d);

/// exists vars. f, as a quantifier-free formula.
LraFormula eliminate(const std::vector<VarId>& vars, const LraFormula& f, std::size_t limit = 200000);

bool evaluate(const LraFormula& f, const std::vector<std::pair<VarId, Rational>>& point);

using Point = std::vector<std::pair<VarId, Rational>>;

/// A rational point satisfying the conjunction, by elimination and back-substitution.
std::optional<Point> find_point(const Conjunction& c);
std::optional<Point> find_point(const LraFormula& f, std::size_t limit = 200000);

}  // namespace dvlg::lra
