#include "dvlg/oracle.hpp"

#include <algorithm>
#include <optional>
#include <unordered_map>

#include "dvlg/error.hpp"
#include "dvlg/normalize.hpp"

namespace dvlg::oracle {

using logic::Formula;
using logic::FormulaKind;
using logic::Sort;
using logic::Term;
using logic::TermKind;
using lra::LinConstraint;
using lra::LinExpr;
using lra::LraFormula;
using lra::Rel;

namespace {

[[noreturn]] void unbound(const std::string& name) {
  throw Error(ErrorKind::UnboundVariable, "no value for variable " + name);
}

}  // namespace

GroupVector eval_group_term(const Term& t, const Assignment& env, std::size_t n) {
  switch (t.kind()) {
    case TermKind::GVar: {
      auto it = env.group_env.find(t.name());
      if (it == env.group_env.end()) unbound(t.name());
      return it->second;
    }
    case TermKind::Zero: return GroupVector::zero(n);
    case TermKind::Add: return eval_group_term(t.kid(0), env, n) + eval_group_term(t.kid(1), env, n);
    case TermKind::Neg: return -eval_group_term(t.kid(0), env, n);
    case TermKind::GMeet: return meet(eval_group_term(t.kid(0), env, n), eval_group_term(t.kid(1), env, n));
    case TermKind::GJoin: return join(eval_group_term(t.kid(0), env, n), eval_group_term(t.kid(1), env, n));
    case TermKind::IntScale:
    case TermKind::RatScale: return scale(t.scalar(), eval_group_term(t.kid(0), env, n));
    default: throw Error(ErrorKind::SortError, "expected a G-sorted term");
  }
}

SubsetL eval_lattice_term(const Term& t, const Assignment& env, std::size_t n) {
  switch (t.kind()) {
    case TermKind::LVar: {
      auto it = env.lattice_env.find(t.name());
      if (it == env.lattice_env.end()) unbound(t.name());
      return it->second;
    }
    case TermKind::Bot: return SubsetL::empty(n);
    case TermKind::Top: return SubsetL::full(n);
    case TermKind::LMeet: return eval_lattice_term(t.kid(0), env, n) & eval_lattice_term(t.kid(1), env, n);
    case TermKind::LJoin: return eval_lattice_term(t.kid(0), env, n) | eval_lattice_term(t.kid(1), env, n);
    case TermKind::Compl: return ~eval_lattice_term(t.kid(0), env, n);
    case TermKind::Val: return std_valuation(eval_group_term(t.kid(0), env, n));
    default: throw Error(ErrorKind::SortError, "expected an L-sorted term");
  }
}

namespace {

bool eval_atom(const Formula& a, const Assignment& env, std::size_t n) {
  switch (a.kind()) {
    case FormulaKind::GLeq: {
      auto l = eval_group_term(a.lhs(), env, n), r = eval_group_term(a.rhs(), env, n);
      for (std::size_t i = 0; i < n; ++i)
        if (l[i] > r[i]) return false;
      return true;
    }
    case FormulaKind::GEq: return eval_group_term(a.lhs(), env, n) == eval_group_term(a.rhs(), env, n);
    case FormulaKind::LBelow: return below(eval_lattice_term(a.lhs(), env, n), eval_lattice_term(a.rhs(), env, n));
    default: return eval_lattice_term(a.lhs(), env, n) == eval_lattice_term(a.rhs(), env, n);
  }
}

}  // namespace

bool eval_qf(const FinStdStructure& s, const Assignment& env, const Formula& f) {
  const std::size_t n = s.ground_size;
  switch (f.kind()) {
    case FormulaKind::True: return true;
    case FormulaKind::False: return false;
    case FormulaKind::Not: return !eval_qf(s, env, f.kid(0));
    case FormulaKind::And: return eval_qf(s, env, f.kid(0)) && eval_qf(s, env, f.kid(1));
    case FormulaKind::Or: return eval_qf(s, env, f.kid(0)) || eval_qf(s, env, f.kid(1));
    case FormulaKind::Implies: return !eval_qf(s, env, f.kid(0)) || eval_qf(s, env, f.kid(1));
    case FormulaKind::Exists:
    case FormulaKind::Forall: throw Error(ErrorKind::PreconditionViolated, "eval_qf needs a quantifier-free formula");
    default: return eval_atom(f, env, n);
  }
}

namespace {

struct Piece {
  std::vector<LinConstraint> guard;
  LinExpr value;
};

class Decider {
 public:
  Decider(std::size_t n, const Limits& limits, Stats* stats, Assignment env)
      : n_(n), limits_(limits), stats_(stats), env_(std::move(env)) {}

  bool decide(const Formula& f) { return eval_concrete(f); }

 private:
  // ---- free-variable bookkeeping
  const std::vector<std::string>& free_names(const Formula& f) {
    auto it = formula_vars_.find(f.id());
    if (it != formula_vars_.end()) return it->second;
    std::vector<std::string> names;
    for (const auto& [v, s] : logic::free_vars(f)) names.push_back(v);
    return formula_vars_.emplace(f.id(), std::move(names)).first->second;
  }

  const std::vector<std::string>& free_names(const Term& t) {
    auto it = term_vars_.find(t.id());
    if (it != term_vars_.end()) return it->second;
    std::vector<std::string> names;
    for (const auto& [v, s] : logic::free_vars(t)) names.push_back(v);
    return term_vars_.emplace(t.id(), std::move(names)).first->second;
  }

  template <typename X>
  bool symbolic_in(const X& x) {
    if (symbolic_.empty()) return false;
    for (const auto& v : free_names(x))
      if (symbolic_.count(v)) return true;
    return false;
  }

  // ---- scoped bindings
  struct Saved {
    std::optional<GroupVector> group;
    std::optional<SubsetL> lattice;
    std::optional<lra::VarId> symbol;
  };

  Saved save(const std::string& v) {
    Saved s;
    if (auto it = env_.group_env.find(v); it != env_.group_env.end()) s.group = it->second;
    if (auto it = env_.lattice_env.find(v); it != env_.lattice_env.end()) s.lattice = it->second;
    if (auto it = symbolic_.find(v); it != symbolic_.end()) s.symbol = it->second;
    env_.group_env.erase(v);
    env_.lattice_env.erase(v);
    symbolic_.erase(v);
    return s;
  }

  void restore(const std::string& v, const Saved& s) {
    env_.group_env.erase(v);
    env_.lattice_env.erase(v);
    symbolic_.erase(v);
    if (s.group) env_.group_env[v] = *s.group;
    if (s.lattice) env_.lattice_env[v] = *s.lattice;
    if (s.symbol) symbolic_[v] = *s.symbol;
  }

  // ---- forced values
  std::optional<Term> forced_term(const Formula& q) {
    if (q.kind() != FormulaKind::Exists) return std::nullopt;
    // Look through an existential prefix: exists v. exists w. (... & v = t & ...).
    std::vector<std::string> inner;
    Formula matrix = q.body();
    while (matrix.kind() == FormulaKind::Exists && matrix.var() != q.var()) {
      inner.push_back(matrix.var());
      matrix = matrix.body();
    }
    if (matrix.kind() == FormulaKind::Exists) return std::nullopt;
    for (const auto& c : logic::conjuncts(matrix)) {
      if (c.kind() != FormulaKind::LEq && c.kind() != FormulaKind::GEq) continue;
      for (int side = 0; side < 2; ++side) {
        const Term& v = side == 0 ? c.lhs() : c.rhs();
        const Term& t = side == 0 ? c.rhs() : c.lhs();
        if (!v.is_var() || v.name() != q.var() || logic::occurs(q.var(), t) || symbolic_in(t)) continue;
        bool bound = true;
        for (const auto& name : free_names(t))
          bound = bound && (env_.group_env.count(name) || env_.lattice_env.count(name)) &&
                  std::find(inner.begin(), inner.end(), name) == inner.end();
        if (bound) return t;
      }
    }
    return std::nullopt;
  }

  // ---- concrete evaluation
  bool eval_concrete(const Formula& f) {
    switch (f.kind()) {
      case FormulaKind::True: return true;
      case FormulaKind::False: return false;
      case FormulaKind::Not: return !eval_concrete(f.kid(0));
      case FormulaKind::And: return eval_concrete(f.kid(0)) && eval_concrete(f.kid(1));
      case FormulaKind::Or: return eval_concrete(f.kid(0)) || eval_concrete(f.kid(1));
      case FormulaKind::Implies: return !eval_concrete(f.kid(0)) || eval_concrete(f.kid(1));
      case FormulaKind::Exists:
      case FormulaKind::Forall: {
        LraFormula r = quantified(f);
        if (!r.is_constant()) throw Error(ErrorKind::PreconditionViolated, "oracle left unresolved constraints");
        return r.is_true();
      }
      default: return eval_atom(f, env_, n_);
    }
  }

  // ---- symbolic compilation
  LraFormula compile(const Formula& f) {
    if (!symbolic_in(f)) return LraFormula::truth(eval_concrete(f));
    switch (f.kind()) {
      case FormulaKind::Not: return !compile(f.kid(0));
      case FormulaKind::And: {
        LraFormula a = compile(f.kid(0));
        if (a.is_false()) return a;
        return a && compile(f.kid(1));
      }
      case FormulaKind::Or: {
        LraFormula a = compile(f.kid(0));
        if (a.is_true()) return a;
        return a || compile(f.kid(1));
      }
      case FormulaKind::Implies: {
        LraFormula a = compile(f.kid(0));
        if (a.is_false()) return LraFormula::truth(true);
        return !a || compile(f.kid(1));
      }
      case FormulaKind::Exists:
      case FormulaKind::Forall: return quantified(f);
      default: return compile_atom(f);
    }
  }

  LraFormula quantified(const Formula& f) {
    const bool is_exists = f.kind() == FormulaKind::Exists;
    const std::string& v = f.var();
    if (auto t = forced_term(f)) {
      const bool group = f.var_sort() == Sort::G;
      GroupVector gv;
      SubsetL lv;
      if (group) gv = eval_group_term(*t, env_, n_);
      else lv = eval_lattice_term(*t, env_, n_);
      Saved s = save(v);
      if (group) env_.group_env[v] = gv;
      else env_.lattice_env[v] = lv;
      LraFormula r = compile(f.body());
      restore(v, s);
      return r;
    }
    if (f.var_sort() == Sort::L) {
      Saved s = save(v);
      std::vector<LraFormula> parts;
      LraFormula result = LraFormula::truth(!is_exists);
      for (std::uint64_t bits = 0; bits <= SubsetL::full_mask(n_); ++bits) {
        env_.lattice_env[v] = SubsetL(n_, bits);
        if (stats_) ++stats_->lattice_branches;
        LraFormula r = compile(f.body());
        if (is_exists && r.is_true()) {
          result = r;
          break;
        }
        if (!is_exists && r.is_false()) {
          result = r;
          break;
        }
        parts.push_back(std::move(r));
        if (bits == SubsetL::full_mask(n_)) result = is_exists ? LraFormula::any(parts) : LraFormula::all(parts);
      }
      restore(v, s);
      return result;
    }
    Saved s = save(v);
    const lra::VarId base = next_id_;
    next_id_ += static_cast<lra::VarId>(n_);
    symbolic_[v] = base;
    std::vector<lra::VarId> vars;
    for (std::size_t i = 0; i < n_; ++i) vars.push_back(base + static_cast<lra::VarId>(i));
    LraFormula body = compile(f.body());
    restore(v, s);
    if (stats_) ++stats_->group_eliminations;
    if (is_exists) return lra::eliminate(vars, body, limits_.max_disjuncts);
    return !lra::eliminate(vars, !body, limits_.max_disjuncts);
  }

  std::vector<Piece> pieces(const Term& t, std::size_t x) {
    if (!symbolic_in(t)) return {{{}, LinExpr(eval_group_term(t, env_, n_)[x])}};
    switch (t.kind()) {
      case TermKind::GVar: return {{{}, LinExpr::variable(symbolic_.at(t.name()) + static_cast<lra::VarId>(x))}};
      case TermKind::Add: {
        auto a = pieces(t.kid(0), x), b = pieces(t.kid(1), x);
        std::vector<Piece> out;
        for (const auto& p : a)
          for (const auto& q : b) {
            std::vector<LinConstraint> g = p.guard;
            g.insert(g.end(), q.guard.begin(), q.guard.end());
            if (auto tidy = lra::tidy(g)) out.push_back({std::move(*tidy), p.value + q.value});
          }
        return out;
      }
      case TermKind::Neg:
      case TermKind::IntScale:
      case TermKind::RatScale: {
        const Rational q = t.kind() == TermKind::Neg ? Rational(-1) : t.scalar();
        auto a = pieces(t.kid(0), x);
        for (auto& p : a) p.value = p.value.scaled(q);
        return a;
      }
      case TermKind::GMeet:
      case TermKind::GJoin: {
        const bool is_meet = t.kind() == TermKind::GMeet;
        auto a = pieces(t.kid(0), x), b = pieces(t.kid(1), x);
        std::vector<Piece> out;
        for (const auto& p : a)
          for (const auto& q : b) {
            std::vector<LinConstraint> g = p.guard;
            g.insert(g.end(), q.guard.begin(), q.guard.end());
            const LinExpr diff = q.value - p.value;  // q - p
            // p is chosen by meet when q - p >= 0, by join when q - p <= 0.
            std::vector<LinConstraint> first = g, second = g;
            if (is_meet) {
              first.push_back({diff, Rel::Ge});
              second.push_back({-diff, Rel::Gt});
            } else {
              first.push_back({-diff, Rel::Ge});
              second.push_back({diff, Rel::Gt});
            }
            if (auto t1 = lra::tidy(first)) out.push_back({std::move(*t1), p.value});
            if (auto t2 = lra::tidy(second)) out.push_back({std::move(*t2), q.value});
          }
        return out;
      }
      default: throw Error(ErrorKind::SortError, "expected a G-sorted term");
    }
  }

  static LraFormula guarded(const std::vector<LinConstraint>& guard, LinConstraint c) {
    std::vector<LraFormula> parts;
    for (const auto& g : guard) parts.push_back(LraFormula::atom(g));
    parts.push_back(LraFormula::atom(std::move(c)));
    return LraFormula::all(std::move(parts));
  }

  LraFormula member(const Term& t, std::size_t x) {
    if (!symbolic_in(t)) return LraFormula::truth(eval_lattice_term(t, env_, n_).contains(x));
    switch (t.kind()) {
      case TermKind::LMeet: return member(t.kid(0), x) && member(t.kid(1), x);
      case TermKind::LJoin: return member(t.kid(0), x) || member(t.kid(1), x);
      case TermKind::Compl: return !member(t.kid(0), x);
      case TermKind::Val: {
        std::vector<LraFormula> alts;
        for (const auto& p : pieces(t.kid(0), x)) alts.push_back(guarded(p.guard, {p.value, Rel::Ge}));
        return LraFormula::any(std::move(alts));
      }
      default: throw Error(ErrorKind::SortError, "expected an L-sorted term");
    }
  }

  LraFormula compile_atom(const Formula& a) {
    std::vector<LraFormula> points;
    for (std::size_t x = 0; x < n_; ++x) {
      LraFormula at = LraFormula::truth(true);
      switch (a.kind()) {
        case FormulaKind::GLeq:
        case FormulaKind::GEq: {
          const Rel rel = a.kind() == FormulaKind::GLeq ? Rel::Ge : Rel::Eq;
          std::vector<LraFormula> alts;
          for (const auto& p : pieces(a.lhs(), x))
            for (const auto& q : pieces(a.rhs(), x)) {
              std::vector<LinConstraint> g = p.guard;
              g.insert(g.end(), q.guard.begin(), q.guard.end());
              alts.push_back(guarded(g, {q.value - p.value, rel}));
            }
          at = LraFormula::any(std::move(alts));
          break;
        }
        case FormulaKind::LBelow: at = !member(a.lhs(), x) || member(a.rhs(), x); break;
        default: {
          LraFormula l = member(a.lhs(), x), r = member(a.rhs(), x);
          at = (l && r) || (!l && !r);
        }
      }
      if (at.is_false()) return at;
      points.push_back(std::move(at));
    }
    return LraFormula::all(std::move(points));
  }

  std::size_t n_;
  Limits limits_;
  Stats* stats_;
  Assignment env_;
  std::map<std::string, lra::VarId> symbolic_;
  lra::VarId next_id_ = 0;
  std::unordered_map<const void*, std::vector<std::string>> formula_vars_;
  std::unordered_map<const void*, std::vector<std::string>> term_vars_;
};

}  // namespace

bool decide_finite(const FinStdStructure& s, const Formula& f, const Assignment& env, const Limits& limits,
                   Stats* stats) {
  const std::size_t n = s.ground_size;
  if (n > limits.max_n)
    throw Error(ErrorKind::ResourceLimit, "ground size " + std::to_string(n) + " above limit " + std::to_string(limits.max_n));
  if (logic::quantifier_count(f) > limits.max_quantifiers)
    throw Error(ErrorKind::ResourceLimit, "more than " + std::to_string(limits.max_quantifiers) + " quantifiers");
  if (logic::atom_count(f) > limits.max_atoms)
    throw Error(ErrorKind::ResourceLimit, "more than " + std::to_string(limits.max_atoms) + " atoms");
  for (const auto& [v, sort] : logic::free_vars(f)) {
    if (sort == Sort::G) {
      auto it = env.group_env.find(v);
      if (it == env.group_env.end()) unbound(v);
      if (it->second.size() != n) throw Error(ErrorKind::LengthMismatch, "value of " + v + " has the wrong length");
    } else {
      auto it = env.lattice_env.find(v);
      if (it == env.lattice_env.end()) unbound(v);
      if (it->second.width() != n) throw Error(ErrorKind::WidthMismatch, "value of " + v + " has the wrong width");
    }
  }
  Decider d(n, limits, stats, env);
  return d.decide(f);
}

}  // namespace dvlg::oracle
