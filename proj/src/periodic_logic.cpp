#include "dvlg/periodic_logic.hpp"

#include <algorithm>

#include "dvlg/error.hpp"
#include "dvlg/lra.hpp"
#include "dvlg/normalize.hpp"

namespace dvlg::periodic {

using logic::Formula;
using logic::FormulaKind;
using logic::Sort;
using logic::Term;
using logic::TermKind;

PeriodicFn eval_group_term(const Term& t, const PeriodicEnv& env) {
  switch (t.kind()) {
    case TermKind::GVar: {
      auto it = env.group.find(t.name());
      if (it == env.group.end()) throw Error(ErrorKind::UnboundVariable, "no value for " + t.name());
      return it->second;
    }
    case TermKind::Zero: return PeriodicFn();
    case TermKind::Add: return eval_group_term(t.kid(0), env) + eval_group_term(t.kid(1), env);
    case TermKind::Neg: return -eval_group_term(t.kid(0), env);
    case TermKind::GMeet: return meet(eval_group_term(t.kid(0), env), eval_group_term(t.kid(1), env));
    case TermKind::GJoin: return join(eval_group_term(t.kid(0), env), eval_group_term(t.kid(1), env));
    case TermKind::IntScale:
    case TermKind::RatScale: return scale(t.scalar(), eval_group_term(t.kid(0), env));
    default: throw Error(ErrorKind::SortError, "lattice term in group position");
  }
}

PeriodicSet eval_lattice_term(const Term& t, const PeriodicEnv& env) {
  switch (t.kind()) {
    case TermKind::LVar: {
      auto it = env.lattice.find(t.name());
      if (it == env.lattice.end()) throw Error(ErrorKind::UnboundVariable, "no value for " + t.name());
      return it->second;
    }
    case TermKind::Bot: return PeriodicSet::bottom();
    case TermKind::Top: return PeriodicSet::top();
    case TermKind::LMeet: return eval_lattice_term(t.kid(0), env) & eval_lattice_term(t.kid(1), env);
    case TermKind::LJoin: return eval_lattice_term(t.kid(0), env) | eval_lattice_term(t.kid(1), env);
    case TermKind::Compl: return ~eval_lattice_term(t.kid(0), env);
    case TermKind::Val: return periodic_valuation(eval_group_term(t.kid(0), env));
    default: throw Error(ErrorKind::SortError, "group term in lattice position");
  }
}

bool eval_qf(const Formula& f, const PeriodicEnv& env) {
  switch (f.kind()) {
    case FormulaKind::True: return true;
    case FormulaKind::False: return false;
    case FormulaKind::GLeq: return leq(eval_group_term(f.lhs(), env), eval_group_term(f.rhs(), env));
    case FormulaKind::GEq: return eval_group_term(f.lhs(), env) == eval_group_term(f.rhs(), env);
    case FormulaKind::LBelow: return below(eval_lattice_term(f.lhs(), env), eval_lattice_term(f.rhs(), env));
    case FormulaKind::LEq: return eval_lattice_term(f.lhs(), env) == eval_lattice_term(f.rhs(), env);
    case FormulaKind::Not: return !eval_qf(f.kid(0), env);
    case FormulaKind::And: return eval_qf(f.kid(0), env) && eval_qf(f.kid(1), env);
    case FormulaKind::Or: return eval_qf(f.kid(0), env) || eval_qf(f.kid(1), env);
    case FormulaKind::Implies: return !eval_qf(f.kid(0), env) || eval_qf(f.kid(1), env);
    default: throw Error(ErrorKind::PreconditionViolated, "quantifier in a quantifier-free evaluation");
  }
}

namespace {

using Column = std::vector<Rational>;
using Index = std::map<std::string, std::size_t>;

Rational point_group(const Term& t, const Index& idx, const Column& c) {
  switch (t.kind()) {
    case TermKind::GVar: return c[idx.at(t.name())];
    case TermKind::Zero: return Rational(0);
    case TermKind::Add: return point_group(t.kid(0), idx, c) + point_group(t.kid(1), idx, c);
    case TermKind::Neg: return -point_group(t.kid(0), idx, c);
    case TermKind::GMeet: return std::min(point_group(t.kid(0), idx, c), point_group(t.kid(1), idx, c));
    case TermKind::GJoin: return std::max(point_group(t.kid(0), idx, c), point_group(t.kid(1), idx, c));
    default: return t.scalar() * point_group(t.kid(0), idx, c);
  }
}

bool point_lattice(const Term& t, const Index& idx, const Column& c) {
  switch (t.kind()) {
    case TermKind::Top: return true;
    case TermKind::Bot: return false;
    case TermKind::LMeet: return point_lattice(t.kid(0), idx, c) && point_lattice(t.kid(1), idx, c);
    case TermKind::LJoin: return point_lattice(t.kid(0), idx, c) || point_lattice(t.kid(1), idx, c);
    case TermKind::Compl: return !point_lattice(t.kid(0), idx, c);
    case TermKind::Val: return point_group(t.kid(0), idx, c).sign() >= 0;
    default: throw Error(ErrorKind::PreconditionViolated, "lattice variable " + t.name() + " in a witness search");
  }
}

bool atom_at(const Formula& a, const Index& idx, const Column& c) {
  switch (a.kind()) {
    case FormulaKind::GLeq: return point_group(a.lhs(), idx, c) <= point_group(a.rhs(), idx, c);
    case FormulaKind::GEq: return point_group(a.lhs(), idx, c) == point_group(a.rhs(), idx, c);
    case FormulaKind::LBelow: return !point_lattice(a.lhs(), idx, c) || point_lattice(a.rhs(), idx, c);
    default: return point_lattice(a.lhs(), idx, c) == point_lattice(a.rhs(), idx, c);
  }
}

struct AtomLit {
  Formula atom;
  bool positive;
};
using Conj = std::vector<AtomLit>;

constexpr std::size_t kMaxDisjuncts = 4096;

std::vector<Conj> atom_dnf(const Formula& f, bool neg) {
  switch (f.kind()) {
    case FormulaKind::True: return neg ? std::vector<Conj>{} : std::vector<Conj>{{}};
    case FormulaKind::False: return neg ? std::vector<Conj>{{}} : std::vector<Conj>{};
    case FormulaKind::Not: return atom_dnf(f.kid(0), !neg);
    case FormulaKind::Implies: return atom_dnf(logic::disj(logic::negation(f.kid(0)), f.kid(1)), neg);
    case FormulaKind::And:
    case FormulaKind::Or: {
      auto x = atom_dnf(f.kid(0), neg), y = atom_dnf(f.kid(1), neg);
      if ((f.kind() == FormulaKind::Or) != neg) {
        x.insert(x.end(), y.begin(), y.end());
        return x;
      }
      std::vector<Conj> out;
      for (const auto& p : x)
        for (const auto& q : y) {
          Conj c = p;
          c.insert(c.end(), q.begin(), q.end());
          out.push_back(std::move(c));
          if (out.size() > kMaxDisjuncts) throw Error(ErrorKind::ResourceLimit, "witness DNF too large");
        }
      return out;
    }
    default: return {{AtomLit{f, !neg}}};
  }
}


// Pointwise truth of atoms as linear arithmetic over one column.
lra::LinExpr lin_expr(const logic::LinearGroupTerm& l, const Index& idx) {
  lra::LinExpr e;
  for (const auto& [name, q] : l.coeffs()) e = e + lra::LinExpr::variable(static_cast<lra::VarId>(idx.at(name)), q);
  return e;
}

lra::LraFormula nonneg_at(const Term& g, const Index& idx) {
  std::vector<lra::LraFormula> meets;
  for (const auto& m : logic::linearize_group_term(g)) {
    std::vector<lra::LraFormula> parts;
    for (const auto& l : m) parts.push_back(lra::LraFormula::atom({lin_expr(l, idx), lra::Rel::Ge}));
    meets.push_back(lra::LraFormula::all(std::move(parts)));
  }
  return lra::LraFormula::any(std::move(meets));
}

lra::LraFormula lattice_at(const Term& t, const Index& idx) {
  switch (t.kind()) {
    case TermKind::Top: return lra::LraFormula::truth(true);
    case TermKind::Bot: return lra::LraFormula::truth(false);
    case TermKind::LMeet: return lattice_at(t.kid(0), idx) && lattice_at(t.kid(1), idx);
    case TermKind::LJoin: return lattice_at(t.kid(0), idx) || lattice_at(t.kid(1), idx);
    case TermKind::Compl: return !lattice_at(t.kid(0), idx);
    case TermKind::Val: return nonneg_at(t.kid(0), idx);
    default: throw Error(ErrorKind::PreconditionViolated, "lattice variable " + t.name() + " in a witness search");
  }
}

lra::LraFormula atom_lra(const Formula& a, const Index& idx) {
  switch (a.kind()) {
    case FormulaKind::GLeq: return nonneg_at(logic::sub(a.rhs(), a.lhs()), idx);
    case FormulaKind::GEq:
      return nonneg_at(logic::sub(a.rhs(), a.lhs()), idx) && nonneg_at(logic::sub(a.lhs(), a.rhs()), idx);
    case FormulaKind::LBelow: return !lattice_at(a.lhs(), idx) || lattice_at(a.rhs(), idx);
    default: {
      auto s = lattice_at(a.lhs(), idx), t = lattice_at(a.rhs(), idx);
      return (s && t) || (!s && !t);
    }
  }
}

std::optional<Column> solve_column(const lra::LraFormula& f, std::size_t width) {
  auto p = lra::find_point(f);
  if (!p) return std::nullopt;
  Column c(width, Rational(0));
  for (const auto& [v, q] : *p) c[static_cast<std::size_t>(v)] = q;
  return c;
}

}  // namespace

bool is_existential_group_sentence(const Formula& sentence) {
  if (!logic::free_vars(sentence).empty()) return false;
  Formula m = sentence;
  while (m.kind() == FormulaKind::Exists && m.var_sort() == Sort::G) m = m.body();
  if (!logic::is_quantifier_free(m)) return false;
  for (const auto& [v, sort] : logic::free_vars(m))
    if (sort == Sort::L) return false;
  return true;
}

std::optional<Witness> find_witness(const Formula& sentence, const WitnessOptions& options) {
  if (!is_existential_group_sentence(sentence))
    throw Error(ErrorKind::PreconditionViolated, "witness search needs exists v:G ... with a lattice-variable-free matrix");
  std::vector<std::string> vars;
  Formula m = sentence;
  while (m.is_quantifier()) {
    vars.push_back(m.var());
    m = m.body();
  }
  Index idx;
  for (std::size_t i = 0; i < vars.size(); ++i) idx[vars[i]] = i;  // innermost binding wins

  auto assemble = [&](const std::vector<Column>& cols, bool exact) -> std::optional<Witness> {
    unsigned k = 0;
    while ((std::size_t{1} << k) < cols.size()) ++k;
    if ((std::size_t{1} << k) > options.max_period) return std::nullopt;
    Witness w{{}, exact};
    PeriodicEnv env;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      std::vector<Rational> vals(std::size_t{1} << k);
      for (std::size_t p = 0; p < vals.size(); ++p) vals[p] = cols[p % cols.size()][i];
      env.group[vars[i]] = w.values[vars[i]] = normalize(k, std::move(vals));
    }
    if (!eval_qf(m, env)) throw Error(ErrorKind::PreconditionViolated, "internal: witness failed verification");
    return w;
  };

  const std::size_t g = options.grid.size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    total *= g;
    if (total > 1'000'000) throw Error(ErrorKind::ResourceLimit, "witness grid too large");
  }
  std::vector<Column> columns;
  for (std::size_t code = 0; code < total; ++code) {
    Column c(vars.size());
    std::size_t x = code;
    for (std::size_t i = 0; i < vars.size(); ++i, x /= g) c[i] = options.grid[x % g];
    columns.push_back(std::move(c));
  }

  for (const auto& conj : atom_dnf(m, false)) {
    std::vector<const Column*> allowed;
    for (const auto& c : columns) {
      bool ok = true;
      for (const auto& l : conj)
        if (l.positive && !atom_at(l.atom, idx, c)) {
          ok = false;
          break;
        }
      if (ok) allowed.push_back(&c);
    }
    if (allowed.empty()) continue;
    std::vector<const Column*> chosen{allowed.front()};
    bool feasible = true;
    for (const auto& l : conj) {
      if (l.positive) continue;
      auto it = std::find_if(allowed.begin(), allowed.end(), [&](const Column* c) { return !atom_at(l.atom, idx, *c); });
      if (it == allowed.end()) {
        feasible = false;
        break;
      }
      if (std::find(chosen.begin(), chosen.end(), *it) == chosen.end()) chosen.push_back(*it);
    }
    if (!feasible) continue;
    std::vector<Column> cols;
    for (const Column* c : chosen) cols.push_back(*c);
    if (auto w = assemble(cols, false)) return w;
  }
  if (!options.exact_columns) return std::nullopt;
  for (const auto& conj : atom_dnf(m, false)) {
    std::vector<lra::LraFormula> pos;
    for (const auto& l : conj)
      if (l.positive) pos.push_back(atom_lra(l.atom, idx));
    const lra::LraFormula allowed = lra::LraFormula::all(pos);
    auto first = solve_column(allowed, vars.size());
    if (!first) continue;
    std::vector<Column> cols{*first};
    bool feasible = true;
    for (const auto& l : conj) {
      if (l.positive) continue;
      auto c = solve_column(allowed && !atom_lra(l.atom, idx), vars.size());
      if (!c) {
        feasible = false;
        break;
      }
      if (std::find(cols.begin(), cols.end(), *c) == cols.end()) cols.push_back(*c);
    }
    if (!feasible) continue;
    if (auto w = assemble(cols, true)) return w;
  }
  return std::nullopt;
}

}  // namespace dvlg::periodic
