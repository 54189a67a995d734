#include "dvlg/ba.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "dvlg/error.hpp"
#include "dvlg/normalize.hpp"
#include "dvlg/parser.hpp"

namespace dvlg::ba {

using logic::Formula;
using logic::FormulaKind;
using logic::Sort;
using logic::Term;
using logic::TermKind;

namespace {

// t = bot when `empty`, t != bot otherwise.
struct Lit {
  Term t;
  bool empty;
};

bool lit_equal(const Lit& a, const Lit& b) { return a.empty == b.empty && a.t == b.t; }
bool lit_less(const Lit& a, const Lit& b) {
  if (!(a.t == b.t)) return a.t < b.t;
  return a.empty && !b.empty;
}

using LitConj = std::vector<Lit>;
using LitDnf = std::vector<LitConj>;

void require_lattice(const Formula& f) {
  if (f.kind() == FormulaKind::GLeq || f.kind() == FormulaKind::GEq)
    throw Error(ErrorKind::NotLatticeSorted, "group atom in a lattice formula");
  if (f.is_quantifier() && f.var_sort() == Sort::G)
    throw Error(ErrorKind::NotLatticeSorted, "group quantifier over " + f.var());
}

// s << t iff s cap compl(t) = bot; s = t iff the symmetric difference is bot.
Term atom_term(const Formula& a) {
  const Term& s = a.lhs();
  const Term& t = a.rhs();
  if (a.kind() == FormulaKind::LBelow) return logic::simplify(logic::lmeet(s, logic::lcompl(t)));
  return logic::simplify(logic::ljoin(logic::lmeet(s, logic::lcompl(t)), logic::lmeet(t, logic::lcompl(s))));
}

std::optional<LitConj> tidy(LitConj c) {
  std::sort(c.begin(), c.end(), lit_less);
  c.erase(std::unique(c.begin(), c.end(), lit_equal), c.end());
  for (std::size_t i = 0; i + 1 < c.size(); ++i)
    if (c[i].t == c[i + 1].t) return std::nullopt;
  return c;
}

constexpr std::size_t kMaxDisjuncts = 20000;

LitDnf lit_dnf(const Formula& f, bool neg) {
  switch (f.kind()) {
    case FormulaKind::True: return neg ? LitDnf{} : LitDnf{{}};
    case FormulaKind::False: return neg ? LitDnf{{}} : LitDnf{};
    case FormulaKind::Not: return lit_dnf(f.kid(0), !neg);
    case FormulaKind::Implies: return lit_dnf(logic::disj(logic::negation(f.kid(0)), f.kid(1)), neg);
    case FormulaKind::And:
    case FormulaKind::Or: {
      const bool conjunctive = (f.kind() == FormulaKind::And) != neg;
      LitDnf a = lit_dnf(f.kid(0), neg), b = lit_dnf(f.kid(1), neg);
      LitDnf out;
      if (!conjunctive) {
        out = std::move(a);
        out.insert(out.end(), b.begin(), b.end());
      } else {
        for (const auto& x : a)
          for (const auto& y : b) {
            LitConj c = x;
            c.insert(c.end(), y.begin(), y.end());
            if (auto t = tidy(std::move(c))) out.push_back(std::move(*t));
            if (out.size() > kMaxDisjuncts) throw Error(ErrorKind::ResourceLimit, "lattice DNF too large");
          }
      }
      if (out.size() > kMaxDisjuncts) throw Error(ErrorKind::ResourceLimit, "lattice DNF too large");
      for (const auto& c : out)
        if (c.empty()) return LitDnf{{}};
      return out;
    }
    case FormulaKind::Exists:
    case FormulaKind::Forall: throw Error(ErrorKind::PreconditionViolated, "quantifier inside a matrix");
    default: {
      require_lattice(f);
      Term t = atom_term(f);
      // In a nontrivial algebra top = bot is false.
      if (t.kind() == TermKind::Bot) return neg ? LitDnf{} : LitDnf{{}};
      if (t.kind() == TermKind::Top) return neg ? LitDnf{{}} : LitDnf{};
      return {{Lit{t, !neg}}};
    }
  }
}

Formula lit_formula(const Lit& l) {
  Formula eq = logic::leq(l.t, logic::bot());
  return l.empty ? eq : logic::negation(eq);
}

Term substitute_const(const Term& t, const std::string& y, bool value) {
  return logic::simplify(logic::substitute(t, y, value ? logic::top() : logic::bot()));
}

Term join_all(const std::vector<Term>& ts) {
  Term out = logic::bot();
  for (const auto& t : ts) out = logic::ljoin(out, t);
  return logic::simplify(out);
}

// Literal for t = bot (or t != bot); nullopt when false, empty when true.
std::optional<LitConj> make_lit(Term t, bool empty) {
  t = logic::simplify(t);
  if (t.kind() == TermKind::Bot) return empty ? LitConj{} : std::optional<LitConj>{};
  if (t.kind() == TermKind::Top) return empty ? std::optional<LitConj>{} : LitConj{};
  return LitConj{Lit{t, empty}};
}

// exists y. (and_i T_i = bot) & (and_j S_j != bot), with T = (A cap y) cup (B cap compl y)
// and S = (C cap y) cup (D cap compl y): holds iff A cap B = bot and each
// (C_j cap compl A) cup (D_j cap compl B) != bot.
std::optional<LitConj> eliminate_lits(const std::string& y, const LitConj& c) {
  LitConj out;
  std::vector<Term> as, bs;
  std::vector<const Lit*> nonempty;
  auto add = [&](std::optional<LitConj> l) {
    if (!l) return false;
    out.insert(out.end(), l->begin(), l->end());
    return true;
  };
  for (const auto& l : c) {
    if (!logic::occurs(y, l.t)) {
      out.push_back(l);
    } else if (l.empty) {
      as.push_back(substitute_const(l.t, y, true));
      bs.push_back(substitute_const(l.t, y, false));
    } else {
      nonempty.push_back(&l);
    }
  }
  const Term a = join_all(as), b = join_all(bs);
  if (!add(make_lit(logic::lmeet(a, b), true))) return std::nullopt;
  for (const Lit* l : nonempty) {
    Term cj = substitute_const(l->t, y, true), dj = substitute_const(l->t, y, false);
    if (!add(make_lit(logic::ljoin(logic::lmeet(cj, logic::lcompl(a)), logic::lmeet(dj, logic::lcompl(b))), false)))
      return std::nullopt;
  }
  return tidy(std::move(out));
}

Formula eliminate_block(const std::vector<std::string>& ys, const Formula& matrix) {
  std::vector<Formula> parts;
  for (auto c : lit_dnf(matrix, false)) {
    bool alive = true;
    for (auto y = ys.rbegin(); y != ys.rend() && alive; ++y) {
      auto next = eliminate_lits(*y, c);
      if (!next) alive = false;
      else c = std::move(*next);
    }
    if (!alive) continue;
    if (c.empty()) return logic::truef();
    std::vector<Formula> lits;
    for (const auto& l : c) lits.push_back(lit_formula(l));
    parts.push_back(logic::conj_all(lits));
  }
  return logic::simplify(logic::disj_all(parts));
}

Formula block_qe(const Formula& f) {
  require_lattice(f);
  if (f.is_atom() || f.kids().empty()) return f;
  if (f.is_quantifier()) {
    const FormulaKind kind = f.kind();
    std::vector<std::string> ys;
    Formula body = f;
    while (body.kind() == kind) {
      require_lattice(body);
      ys.push_back(body.var());
      body = body.body();
    }
    body = block_qe(body);
    if (kind == FormulaKind::Exists) return eliminate_block(ys, body);
    return logic::simplify(logic::negation(eliminate_block(ys, logic::simplify(logic::negation(body)))));
  }
  std::vector<Formula> kids;
  for (const auto& k : f.kids()) kids.push_back(block_qe(k));
  return logic::rebuild(f, std::move(kids));
}

Formula qe_impl(const Formula& f, const std::function<Formula(const std::string&, const Formula&)>& elim) {
  require_lattice(f);
  if (f.is_atom() || f.kids().empty()) return f;
  if (f.is_quantifier()) {
    Formula body = qe_impl(f.body(), elim);
    if (f.kind() == FormulaKind::Exists) return elim(f.var(), body);
    return logic::simplify(logic::negation(elim(f.var(), logic::simplify(logic::negation(body)))));
  }
  std::vector<Formula> kids;
  for (const auto& k : f.kids()) kids.push_back(qe_impl(k, elim));
  return logic::rebuild(f, std::move(kids));
}

bool eval_closed_term(const Term& t) {
  switch (t.kind()) {
    case TermKind::Top: return true;
    case TermKind::Bot: return false;
    case TermKind::LMeet: return eval_closed_term(t.kid(0)) && eval_closed_term(t.kid(1));
    case TermKind::LJoin: return eval_closed_term(t.kid(0)) || eval_closed_term(t.kid(1));
    case TermKind::Compl: return !eval_closed_term(t.kid(0));
    case TermKind::Val: {
      Term p = logic::push_valuation(t);
      if (p.kind() == TermKind::Val) throw Error(ErrorKind::NotSentence, "valuation of a non-closed term");
      return eval_closed_term(p);
    }
    default: throw Error(ErrorKind::NotSentence, "free variable " + t.name() + " in a closed formula");
  }
}

}  // namespace

Formula ba_qe(const Formula& f) { return logic::simplify(block_qe(f)); }

bool evaluate_closed(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::True: return true;
    case FormulaKind::False: return false;
    case FormulaKind::Not: return !evaluate_closed(f.kid(0));
    case FormulaKind::And: return evaluate_closed(f.kid(0)) && evaluate_closed(f.kid(1));
    case FormulaKind::Or: return evaluate_closed(f.kid(0)) || evaluate_closed(f.kid(1));
    case FormulaKind::Implies: return !evaluate_closed(f.kid(0)) || evaluate_closed(f.kid(1));
    case FormulaKind::LBelow: return !eval_closed_term(f.lhs()) || eval_closed_term(f.rhs());
    case FormulaKind::LEq: return eval_closed_term(f.lhs()) == eval_closed_term(f.rhs());
    default: throw Error(ErrorKind::NotSentence, "quantifier or group atom in a closed lattice formula");
  }
}

bool ba_decide(const Formula& sentence) {
  if (!logic::free_vars(sentence).empty())
    throw Error(ErrorKind::NotSentence, "free variable " + logic::free_vars(sentence).front().first);
  return evaluate_closed(ba_qe(logic::push_valuation(sentence)));
}

// ---------------------------------------------------------------- minterms

namespace {

constexpr std::size_t kMaxMintermAtoms = 12;

void collect_atoms(const Term& t, std::vector<Term>& atoms) {
  if (t.kind() == TermKind::LVar || t.kind() == TermKind::Val) {
    if (std::find(atoms.begin(), atoms.end(), t) == atoms.end()) atoms.push_back(t);
    return;
  }
  for (const auto& k : t.kids()) collect_atoms(k, atoms);
}

bool term_on_minterm(const Term& t, const std::vector<Term>& atoms, std::size_t m) {
  switch (t.kind()) {
    case TermKind::Top: return true;
    case TermKind::Bot: return false;
    case TermKind::LMeet: return term_on_minterm(t.kid(0), atoms, m) && term_on_minterm(t.kid(1), atoms, m);
    case TermKind::LJoin: return term_on_minterm(t.kid(0), atoms, m) || term_on_minterm(t.kid(1), atoms, m);
    case TermKind::Compl: return !term_on_minterm(t.kid(0), atoms, m);
    default: {
      const auto idx = static_cast<std::size_t>(std::find(atoms.begin(), atoms.end(), t) - atoms.begin());
      return (m >> idx) & 1U;
    }
  }
}

Term minterm_term(const std::vector<Term>& atoms, std::size_t m) {
  Term out = logic::top();
  for (std::size_t j = 0; j < atoms.size(); ++j)
    out = logic::lmeet(out, (m >> j) & 1U ? atoms[j] : logic::lcompl(atoms[j]));
  return logic::simplify(out);
}

std::optional<MintermStatus> pattern(const LitConj& c, const std::vector<Term>& atoms, const std::vector<std::string>& names) {
  const std::size_t size = std::size_t{1} << atoms.size();
  MintermStatus p{names, std::vector<MintermStatus::Status>(size, MintermStatus::Status::Free), {}};
  for (const auto& l : c)
    if (l.empty)
      for (std::size_t m = 0; m < size; ++m)
        if (term_on_minterm(l.t, atoms, m)) p.status[m] = MintermStatus::Status::Empty;
  for (const auto& l : c) {
    if (l.empty) continue;
    std::vector<bool> set(size, false);
    std::size_t count = 0, last = 0;
    for (std::size_t m = 0; m < size; ++m)
      if (term_on_minterm(l.t, atoms, m) && p.status[m] != MintermStatus::Status::Empty) {
        set[m] = true;
        ++count;
        last = m;
      }
    if (count == 0) return std::nullopt;
    if (count == 1) p.status[last] = MintermStatus::Status::Nonempty;
    p.nonempty_sets.push_back(std::move(set));
  }
  return p;
}

// Split rule: parameter minterm m' is the pair (m' cap y, m' cap compl y).
MintermStatus project_last(const MintermStatus& p) {
  const std::size_t half = p.status.size() / 2;
  MintermStatus out{{p.variables.begin(), p.variables.end() - 1},
                    std::vector<MintermStatus::Status>(half, MintermStatus::Status::Free), {}};
  const std::size_t y_bit = half;
  for (std::size_t m = 0; m < half; ++m)
    if (p.status[m] == MintermStatus::Status::Empty && p.status[m | y_bit] == MintermStatus::Status::Empty)
      out.status[m] = MintermStatus::Status::Empty;
  for (const auto& set : p.nonempty_sets) {
    std::vector<bool> proj(half, false);
    std::size_t count = 0, last = 0;
    for (std::size_t m = 0; m < half; ++m)
      if (set[m] || set[m | y_bit]) {
        proj[m] = true;
        ++count;
        last = m;
      }
    if (count == 1) out.status[last] = MintermStatus::Status::Nonempty;
    out.nonempty_sets.push_back(std::move(proj));
  }
  return out;
}

Formula pattern_formula(const MintermStatus& p, const std::vector<Term>& atoms) {
  std::vector<Formula> parts;
  std::vector<Term> empty;
  for (std::size_t m = 0; m < p.status.size(); ++m)
    if (p.status[m] == MintermStatus::Status::Empty) empty.push_back(minterm_term(atoms, m));
  parts.push_back(logic::leq(join_all(empty), logic::bot()));
  for (const auto& set : p.nonempty_sets) {
    std::vector<Term> ms;
    for (std::size_t m = 0; m < set.size(); ++m)
      if (set[m]) ms.push_back(minterm_term(atoms, m));
    parts.push_back(logic::negation(logic::leq(join_all(ms), logic::bot())));
  }
  return logic::simplify(logic::conj_all(parts));
}

Formula eliminate_exists_minterm(const std::string& y, const Formula& matrix) {
  if (!logic::occurs_free(y, matrix)) return matrix;
  LitDnf dnf = lit_dnf(matrix, false);
  std::vector<Term> atoms;
  for (const auto& c : dnf)
    for (const auto& l : c) collect_atoms(l.t, atoms);
  // y goes last so that projection drops the top bit.
  const Term yv = logic::lvar(y);
  atoms.erase(std::remove(atoms.begin(), atoms.end(), yv), atoms.end());
  atoms.push_back(yv);
  if (atoms.size() > kMaxMintermAtoms) throw Error(ErrorKind::ResourceLimit, "too many minterm atoms");
  std::vector<std::string> names;
  for (const auto& a : atoms) names.push_back(logic::print(a));
  std::vector<Term> params(atoms.begin(), atoms.end() - 1);
  std::vector<Formula> parts;
  for (const auto& c : dnf) {
    auto p = pattern(c, atoms, names);
    if (!p) continue;
    parts.push_back(pattern_formula(project_last(*p), params));
  }
  return logic::simplify(logic::disj_all(parts));
}

}  // namespace

Formula ba_qe_minterm(const Formula& f) { return logic::simplify(qe_impl(f, eliminate_exists_minterm)); }

// ---------------------------------------------------------------- intervals

IntervalSet IntervalSet::top() { return from({{Rational(0), Rational(1)}}); }

IntervalSet IntervalSet::from(std::vector<std::pair<Rational, Rational>> intervals) {
  for (auto& [lo, hi] : intervals) {
    lo = std::max(lo, Rational(0));
    hi = std::min(hi, Rational(1));
  }
  intervals.erase(std::remove_if(intervals.begin(), intervals.end(), [](const auto& p) { return p.first >= p.second; }),
                  intervals.end());
  std::sort(intervals.begin(), intervals.end());
  IntervalSet out;
  for (auto& p : intervals) {
    if (!out.iv_.empty() && p.first <= out.iv_.back().second) out.iv_.back().second = std::max(out.iv_.back().second, p.second);
    else out.iv_.push_back(std::move(p));
  }
  return out;
}

IntervalSet IntervalSet::meet(const IntervalSet& o) const {
  std::vector<std::pair<Rational, Rational>> out;
  std::size_t i = 0, j = 0;
  while (i < iv_.size() && j < o.iv_.size()) {
    Rational lo = std::max(iv_[i].first, o.iv_[j].first), hi = std::min(iv_[i].second, o.iv_[j].second);
    if (lo < hi) out.emplace_back(lo, hi);
    if (iv_[i].second < o.iv_[j].second) ++i;
    else ++j;
  }
  return from(std::move(out));
}

IntervalSet IntervalSet::join(const IntervalSet& o) const {
  auto all = iv_;
  all.insert(all.end(), o.iv_.begin(), o.iv_.end());
  return from(std::move(all));
}

IntervalSet IntervalSet::complement() const {
  std::vector<std::pair<Rational, Rational>> out;
  Rational cursor(0);
  for (const auto& [lo, hi] : iv_) {
    if (cursor < lo) out.emplace_back(cursor, lo);
    cursor = hi;
  }
  if (cursor < Rational(1)) out.emplace_back(cursor, Rational(1));
  return from(std::move(out));
}

IntervalSet IntervalSet::proper_half() const {
  if (iv_.empty()) return *this;
  const auto& [p, q] = iv_.front();
  return from({{p, (p + q) / Rational(2)}});
}

std::string IntervalSet::str() const {
  if (iv_.empty()) return "{}";
  std::ostringstream os;
  for (std::size_t i = 0; i < iv_.size(); ++i) os << (i ? " u " : "") << '[' << iv_[i].first << ',' << iv_[i].second << ')';
  return os.str();
}

namespace {

class IntervalEvaluator {
 public:
  bool eval(const Formula& f) {
    switch (f.kind()) {
      case FormulaKind::True: return true;
      case FormulaKind::False: return false;
      case FormulaKind::Not: return !eval(f.kid(0));
      case FormulaKind::And: return eval(f.kid(0)) && eval(f.kid(1));
      case FormulaKind::Or: return eval(f.kid(0)) || eval(f.kid(1));
      case FormulaKind::Implies: return !eval(f.kid(0)) || eval(f.kid(1));
      case FormulaKind::LBelow: return term(f.lhs()).below(term(f.rhs()));
      case FormulaKind::LEq: return term(f.lhs()) == term(f.rhs());
      case FormulaKind::Exists:
      case FormulaKind::Forall: {
        require_lattice(f);
        const bool is_exists = f.kind() == FormulaKind::Exists;
        for (const auto& c : candidates()) {
          env_.emplace_back(f.var(), c);
          const bool r = eval(f.body());
          env_.pop_back();
          if (r == is_exists) return r;
        }
        return !is_exists;
      }
      default: throw Error(ErrorKind::NotLatticeSorted, "group atom in a lattice formula");
    }
  }

 private:
  IntervalSet term(const Term& t) {
    switch (t.kind()) {
      case TermKind::Top: return IntervalSet::top();
      case TermKind::Bot: return IntervalSet::bottom();
      case TermKind::LMeet: return term(t.kid(0)).meet(term(t.kid(1)));
      case TermKind::LJoin: return term(t.kid(0)).join(term(t.kid(1)));
      case TermKind::Compl: return term(t.kid(0)).complement();
      case TermKind::LVar:
        for (auto it = env_.rbegin(); it != env_.rend(); ++it)
          if (it->first == t.name()) return it->second;
        throw Error(ErrorKind::NotSentence, "free variable " + t.name());
      case TermKind::Val: {
        Term p = logic::push_valuation(t);
        if (p.kind() == TermKind::Val) throw Error(ErrorKind::NotLatticeSorted, "valuation of a group variable");
        return term(p);
      }
      default: throw Error(ErrorKind::NotLatticeSorted, "group term in a lattice formula");
    }
  }

  // Per nonempty cell of the current partition: bottom, a proper half, or the whole cell.
  std::vector<IntervalSet> candidates() const {
    std::vector<IntervalSet> cells{IntervalSet::top()};
    for (const auto& [name, e] : env_) {
      std::vector<IntervalSet> next;
      for (const auto& c : cells) {
        IntervalSet in = c.meet(e), out = c.meet(e.complement());
        if (!in.is_empty()) next.push_back(in);
        if (!out.is_empty()) next.push_back(out);
      }
      cells = std::move(next);
    }
    std::vector<IntervalSet> out{IntervalSet::bottom()};
    for (const auto& c : cells) {
      std::vector<IntervalSet> grown;
      for (const auto& partial : out) {
        grown.push_back(partial);
        grown.push_back(partial.join(c.proper_half()));
        grown.push_back(partial.join(c));
      }
      out = std::move(grown);
    }
    return out;
  }

  std::vector<std::pair<std::string, IntervalSet>> env_;
};

}  // namespace

bool interval_check(const Formula& sentence, unsigned depth) {
  if (depth > 4) throw Error(ErrorKind::DepthExceeded, "interval_check supports depth at most 4");
  if (logic::quantifier_depth(sentence) > depth)
    throw Error(ErrorKind::DepthExceeded, "quantifier depth " + std::to_string(logic::quantifier_depth(sentence)) +
                                              " exceeds " + std::to_string(depth));
  if (!logic::free_vars(sentence).empty())
    throw Error(ErrorKind::NotSentence, "free variable " + logic::free_vars(sentence).front().first);
  IntervalEvaluator ev;
  return ev.eval(sentence);
}

}  // namespace dvlg::ba
