#pragma once

// Terms and formulas of the two-sorted language of valued l-groups.
// Sort G carries the l-group (0, +, -, meet, join, integer scaling), sort L
// the bounded lattice (bot, top, cap, cup, compl) and P : G -> L links them.

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dvlg/rational.hpp"

namespace dvlg::logic {

enum class Sort { G, L };
const char* to_string(Sort s);

enum class TermKind {
  GVar, LVar, Zero, Add, Neg, GMeet, GJoin, IntScale, RatScale,
  Bot, Top, LMeet, LJoin, Compl, Val,
};

class Term;

struct TermNode {
  TermKind kind;
  std::string name;          // variables
  Rational scalar;           // IntScale / RatScale
  std::vector<Term> kids;
  std::size_t hash = 0;      // structural
};

/// Immutable, shared term tree.
class Term {
 public:
  Term() = default;
  explicit Term(std::shared_ptr<const TermNode> node) : node_(std::move(node)) {}

  TermKind kind() const { return node_->kind; }
  Sort sort() const;
  const std::string& name() const { return node_->name; }
  const Rational& scalar() const { return node_->scalar; }
  const std::vector<Term>& kids() const { return node_->kids; }
  const Term& kid(std::size_t i) const { return node_->kids[i]; }
  bool is_var() const { return kind() == TermKind::GVar || kind() == TermKind::LVar; }
  explicit operator bool() const { return node_ != nullptr; }
  /// Node identity, stable while the term is alive.
  const void* id() const { return node_.get(); }
  std::size_t hash() const { return node_->hash; }

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator<(const Term& a, const Term& b);

 private:
  std::shared_ptr<const TermNode> node_;
};

// Term builders.
Term gvar(const std::string& name);
Term lvar(const std::string& name);
Term var(const std::string& name, Sort sort);
Term zero();
Term add(Term a, Term b);
Term sub(Term a, Term b);
Term neg(Term a);
Term gmeet(Term a, Term b);
Term gjoin(Term a, Term b);
Term int_scale(long n, Term a);
Term int_scale(const Rational& n, Term a);
Term rat_scale(const Rational& q, Term a);
Term bot();
Term top();
Term lmeet(Term a, Term b);
Term ljoin(Term a, Term b);
Term lcompl(Term a);
Term val(Term a);

enum class FormulaKind {
  GLeq, GEq, LBelow, LEq, Not, And, Or, Implies, Exists, Forall, True, False,
};

class Formula;

struct FormulaNode {
  FormulaKind kind;
  std::vector<Term> terms;       // atoms: two terms
  std::vector<Formula> kids;     // connectives / quantifier body
  std::string var;               // quantifiers
  Sort sort = Sort::G;           // quantifiers
};

class Formula {
 public:
  Formula() = default;
  explicit Formula(std::shared_ptr<const FormulaNode> node) : node_(std::move(node)) {}

  FormulaKind kind() const { return node_->kind; }
  const Term& lhs() const { return node_->terms[0]; }
  const Term& rhs() const { return node_->terms[1]; }
  const std::vector<Formula>& kids() const { return node_->kids; }
  const Formula& kid(std::size_t i) const { return node_->kids[i]; }
  const Formula& body() const { return node_->kids[0]; }
  const std::string& var() const { return node_->var; }
  Sort var_sort() const { return node_->sort; }

  bool is_atom() const;
  bool is_quantifier() const { return kind() == FormulaKind::Exists || kind() == FormulaKind::Forall; }
  explicit operator bool() const { return node_ != nullptr; }
  const void* id() const { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  std::shared_ptr<const FormulaNode> node_;
};

// Formula builders.
Formula gleq(Term a, Term b);
Formula geq(Term a, Term b);
Formula lbelow(Term a, Term b);
Formula leq(Term a, Term b);
/// Sort-dispatched equality.
Formula equals(Term a, Term b);
Formula negation(Formula f);
Formula conj(Formula a, Formula b);
Formula disj(Formula a, Formula b);
Formula implies(Formula a, Formula b);
Formula exists(const std::string& v, Sort s, Formula body);
Formula forall(const std::string& v, Sort s, Formula body);
Formula quantifier(FormulaKind kind, const std::string& v, Sort s, Formula body);
Formula truef();
Formula falsef();
/// Left-nested conjunction/disjunction (balanced above 64 operands); empty lists give true/false.
Formula conj_all(const std::vector<Formula>& fs);
Formula disj_all(const std::vector<Formula>& fs);
/// s <= t & ~(s = t), on either sort.
Formula strictly_below(Term a, Term b);

using VarList = std::vector<std::pair<std::string, Sort>>;

/// Free variables in first-occurrence order.
VarList free_vars(const Formula& f);
VarList free_vars(const Term& t);
bool occurs_free(const std::string& name, const Formula& f);
bool occurs(const std::string& name, const Term& t);
/// Every variable name used anywhere, bound or free.
std::set<std::string> all_names(const Formula& f);
std::size_t quantifier_depth(const Formula& f);
std::size_t quantifier_count(const Formula& f);
std::size_t atom_count(const Formula& f);
bool is_quantifier_free(const Formula& f);
bool has_group_quantifier(const Formula& f);
bool mentions_compl(const Formula& f);

/// Produces names that do not clash with a reserved set.
class NameSupply {
 public:
  NameSupply() = default;
  explicit NameSupply(std::set<std::string> used) : used_(std::move(used)) {}
  void reserve(const std::string& name) { used_.insert(name); }
  void reserve_all(const Formula& f);
  std::string fresh(const std::string& base);

 private:
  std::set<std::string> used_;
  std::map<std::string, unsigned> counters_;
};

/// Bottom-up term rewrite: children first, then fn on the rebuilt node.
Term map_term(const Term& t, const std::function<Term(const Term&)>& fn);
Term rebuild(const Term& t, std::vector<Term> kids);
/// Applies fn to both sides of every atom.
Formula map_atoms_terms(const Formula& f, const std::function<Term(const Term&)>& fn);
/// Replaces every atom by fn(atom).
Formula map_atoms(const Formula& f, const std::function<Formula(const Formula&)>& fn);
Formula rebuild(const Formula& f, std::vector<Formula> kids);

/// Capture-avoiding substitution of a term for a free variable.
Term substitute(const Term& t, const std::string& name, const Term& replacement);
Formula substitute(const Formula& f, const std::string& name, const Term& replacement, NameSupply& names);

/// Renames every bound variable to a fresh name.
Formula rename_apart(const Formula& f, NameSupply& names);

/// Rewrites -> away and pushes negations down to atoms.
Formula nnf(const Formula& f);

}  // namespace dvlg::logic
