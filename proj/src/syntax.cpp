#include "dvlg/syntax.hpp"

#include <algorithm>
#include <unordered_map>

#include "dvlg/error.hpp"

namespace dvlg::logic {

const char* to_string(Sort s) { return s == Sort::G ? "G" : "L"; }

namespace {

std::size_t mix(std::size_t h, std::size_t v) { return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)); }

Term make_term(TermKind kind, std::vector<Term> kids, std::string name = {}, Rational scalar = Rational(0)) {
  std::size_t h = mix(static_cast<std::size_t>(kind), std::hash<std::string>{}(name));
  if (!scalar.is_zero()) h = mix(h, std::hash<std::string>{}(scalar.str()));
  for (const auto& k : kids) h = mix(h, k.hash());
  return Term(std::make_shared<const TermNode>(TermNode{kind, std::move(name), std::move(scalar), std::move(kids), h}));
}

Formula make_formula(FormulaKind kind, std::vector<Term> terms, std::vector<Formula> kids,
                     std::string var = {}, Sort sort = Sort::G) {
  return Formula(std::make_shared<const FormulaNode>(
      FormulaNode{kind, std::move(terms), std::move(kids), std::move(var), sort}));
}

void require_sort(const Term& t, Sort s, const char* ctx) {
  if (t.sort() != s)
    throw Error(ErrorKind::SortError, std::string(ctx) + " expects an operand of sort " + to_string(s));
}

}  // namespace

Sort Term::sort() const {
  switch (kind()) {
    case TermKind::GVar: case TermKind::Zero: case TermKind::Add: case TermKind::Neg:
    case TermKind::GMeet: case TermKind::GJoin: case TermKind::IntScale: case TermKind::RatScale:
      return Sort::G;
    default:
      return Sort::L;
  }
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  if (a.hash() != b.hash()) return false;
  if (a.kind() != b.kind() || a.name() != b.name() || !(a.scalar() == b.scalar()) || a.kids().size() != b.kids().size())
    return false;
  for (std::size_t i = 0; i < a.kids().size(); ++i)
    if (!(a.kid(i) == b.kid(i))) return false;
  return true;
}

namespace {

// Hash first, then structure: a total order consistent with ==.
int compare(const Term& a, const Term& b) {
  if (a.id() == b.id()) return 0;
  if (a.hash() != b.hash()) return a.hash() < b.hash() ? -1 : 1;
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  if (int c = a.name().compare(b.name())) return c < 0 ? -1 : 1;
  if (!(a.scalar() == b.scalar())) return a.scalar() < b.scalar() ? -1 : 1;
  if (a.kids().size() != b.kids().size()) return a.kids().size() < b.kids().size() ? -1 : 1;
  for (std::size_t i = 0; i < a.kids().size(); ++i)
    if (int c = compare(a.kid(i), b.kid(i))) return c;
  return 0;
}

}  // namespace

bool operator<(const Term& a, const Term& b) { return compare(a, b) < 0; }

Term gvar(const std::string& name) { return make_term(TermKind::GVar, {}, name); }
Term lvar(const std::string& name) { return make_term(TermKind::LVar, {}, name); }
Term var(const std::string& name, Sort sort) { return sort == Sort::G ? gvar(name) : lvar(name); }
Term zero() { return make_term(TermKind::Zero, {}); }

Term add(Term a, Term b) {
  require_sort(a, Sort::G, "+");
  require_sort(b, Sort::G, "+");
  return make_term(TermKind::Add, {std::move(a), std::move(b)});
}
Term sub(Term a, Term b) { return add(std::move(a), neg(std::move(b))); }
Term neg(Term a) {
  require_sort(a, Sort::G, "-");
  return make_term(TermKind::Neg, {std::move(a)});
}
Term gmeet(Term a, Term b) {
  require_sort(a, Sort::G, "meet");
  require_sort(b, Sort::G, "meet");
  return make_term(TermKind::GMeet, {std::move(a), std::move(b)});
}
Term gjoin(Term a, Term b) {
  require_sort(a, Sort::G, "join");
  require_sort(b, Sort::G, "join");
  return make_term(TermKind::GJoin, {std::move(a), std::move(b)});
}
Term int_scale(long n, Term a) { return int_scale(Rational(n), std::move(a)); }
Term int_scale(const Rational& n, Term a) {
  require_sort(a, Sort::G, "scaling");
  if (!n.is_integer()) throw Error(ErrorKind::SortError, "integer scaling by non-integer " + n.str());
  return make_term(TermKind::IntScale, {std::move(a)}, {}, n);
}
Term rat_scale(const Rational& q, Term a) {
  require_sort(a, Sort::G, "scaling");
  return make_term(TermKind::RatScale, {std::move(a)}, {}, q);
}
Term bot() { return make_term(TermKind::Bot, {}); }
Term top() { return make_term(TermKind::Top, {}); }
Term lmeet(Term a, Term b) {
  require_sort(a, Sort::L, "cap");
  require_sort(b, Sort::L, "cap");
  return make_term(TermKind::LMeet, {std::move(a), std::move(b)});
}
Term ljoin(Term a, Term b) {
  require_sort(a, Sort::L, "cup");
  require_sort(b, Sort::L, "cup");
  return make_term(TermKind::LJoin, {std::move(a), std::move(b)});
}
Term lcompl(Term a) {
  require_sort(a, Sort::L, "compl");
  return make_term(TermKind::Compl, {std::move(a)});
}
Term val(Term a) {
  require_sort(a, Sort::G, "P");
  return make_term(TermKind::Val, {std::move(a)});
}

bool Formula::is_atom() const {
  switch (kind()) {
    case FormulaKind::GLeq: case FormulaKind::GEq: case FormulaKind::LBelow: case FormulaKind::LEq:
      return true;
    default:
      return false;
  }
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  if (a.kind() != b.kind() || a.var() != b.var() || a.var_sort() != b.var_sort()) return false;
  if (a.node_->terms.size() != b.node_->terms.size() || a.kids().size() != b.kids().size()) return false;
  for (std::size_t i = 0; i < a.node_->terms.size(); ++i)
    if (!(a.node_->terms[i] == b.node_->terms[i])) return false;
  for (std::size_t i = 0; i < a.kids().size(); ++i)
    if (!(a.kid(i) == b.kid(i))) return false;
  return true;
}

Formula gleq(Term a, Term b) {
  require_sort(a, Sort::G, "<=");
  require_sort(b, Sort::G, "<=");
  return make_formula(FormulaKind::GLeq, {std::move(a), std::move(b)}, {});
}
Formula geq(Term a, Term b) {
  require_sort(a, Sort::G, "=");
  require_sort(b, Sort::G, "=");
  return make_formula(FormulaKind::GEq, {std::move(a), std::move(b)}, {});
}
Formula lbelow(Term a, Term b) {
  require_sort(a, Sort::L, "<<");
  require_sort(b, Sort::L, "<<");
  return make_formula(FormulaKind::LBelow, {std::move(a), std::move(b)}, {});
}
Formula leq(Term a, Term b) {
  require_sort(a, Sort::L, "=");
  require_sort(b, Sort::L, "=");
  return make_formula(FormulaKind::LEq, {std::move(a), std::move(b)}, {});
}
Formula equals(Term a, Term b) {
  if (a.sort() != b.sort()) throw Error(ErrorKind::SortError, "equality between different sorts");
  return a.sort() == Sort::G ? geq(std::move(a), std::move(b)) : leq(std::move(a), std::move(b));
}
Formula negation(Formula f) { return make_formula(FormulaKind::Not, {}, {std::move(f)}); }
Formula conj(Formula a, Formula b) { return make_formula(FormulaKind::And, {}, {std::move(a), std::move(b)}); }
Formula disj(Formula a, Formula b) { return make_formula(FormulaKind::Or, {}, {std::move(a), std::move(b)}); }
Formula implies(Formula a, Formula b) {
  return make_formula(FormulaKind::Implies, {}, {std::move(a), std::move(b)});
}
Formula quantifier(FormulaKind kind, const std::string& v, Sort s, Formula body) {
  return make_formula(kind, {}, {std::move(body)}, v, s);
}
Formula exists(const std::string& v, Sort s, Formula body) {
  return quantifier(FormulaKind::Exists, v, s, std::move(body));
}
Formula forall(const std::string& v, Sort s, Formula body) {
  return quantifier(FormulaKind::Forall, v, s, std::move(body));
}
Formula truef() { return make_formula(FormulaKind::True, {}, {}); }
Formula falsef() { return make_formula(FormulaKind::False, {}, {}); }

namespace {

constexpr std::size_t kLeftNestedMax = 64;

Formula fold(FormulaKind kind, const std::vector<Formula>& fs, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return fs[lo];
  if (hi - lo <= kLeftNestedMax) {
    Formula out = fs[lo];
    for (std::size_t i = lo + 1; i < hi; ++i) out = kind == FormulaKind::And ? conj(out, fs[i]) : disj(out, fs[i]);
    return out;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  Formula a = fold(kind, fs, lo, mid), b = fold(kind, fs, mid, hi);
  return kind == FormulaKind::And ? conj(a, b) : disj(a, b);
}

}  // namespace

Formula conj_all(const std::vector<Formula>& fs) {
  return fs.empty() ? truef() : fold(FormulaKind::And, fs, 0, fs.size());
}

Formula disj_all(const std::vector<Formula>& fs) {
  return fs.empty() ? falsef() : fold(FormulaKind::Or, fs, 0, fs.size());
}

Formula strictly_below(Term a, Term b) {
  Formula weak = a.sort() == Sort::G ? gleq(a, b) : lbelow(a, b);
  return conj(weak, negation(equals(a, b)));
}

namespace {

void collect_free(const Term& t, VarList& out, const std::vector<std::string>& bound) {
  if (t.is_var()) {
    if (std::find(bound.begin(), bound.end(), t.name()) != bound.end()) return;
    for (const auto& [n, s] : out)
      if (n == t.name()) return;
    out.emplace_back(t.name(), t.sort());
    return;
  }
  for (const auto& k : t.kids()) collect_free(k, out, bound);
}

void collect_free(const Formula& f, VarList& out, std::vector<std::string>& bound) {
  if (f.is_atom()) {
    collect_free(f.lhs(), out, bound);
    collect_free(f.rhs(), out, bound);
    return;
  }
  if (f.is_quantifier()) {
    bound.push_back(f.var());
    collect_free(f.body(), out, bound);
    bound.pop_back();
    return;
  }
  for (const auto& k : f.kids()) collect_free(k, out, bound);
}

void collect_names(const Term& t, std::set<std::string>& out) {
  if (t.is_var()) out.insert(t.name());
  for (const auto& k : t.kids()) collect_names(k, out);
}

}  // namespace

VarList free_vars(const Formula& f) {
  VarList out;
  std::vector<std::string> bound;
  collect_free(f, out, bound);
  return out;
}

VarList free_vars(const Term& t) {
  VarList out;
  collect_free(t, out, {});
  return out;
}

bool occurs(const std::string& name, const Term& t) {
  if (t.is_var()) return t.name() == name;
  return std::any_of(t.kids().begin(), t.kids().end(), [&](const Term& k) { return occurs(name, k); });
}

bool occurs_free(const std::string& name, const Formula& f) {
  if (f.is_atom()) return occurs(name, f.lhs()) || occurs(name, f.rhs());
  if (f.is_quantifier()) return f.var() != name && occurs_free(name, f.body());
  return std::any_of(f.kids().begin(), f.kids().end(), [&](const Formula& k) { return occurs_free(name, k); });
}

std::set<std::string> all_names(const Formula& f) {
  std::set<std::string> out;
  std::function<void(const Formula&)> go = [&](const Formula& g) {
    if (g.is_atom()) {
      collect_names(g.lhs(), out);
      collect_names(g.rhs(), out);
      return;
    }
    if (g.is_quantifier()) out.insert(g.var());
    for (const auto& k : g.kids()) go(k);
  };
  go(f);
  return out;
}

std::size_t quantifier_depth(const Formula& f) {
  std::size_t d = 0;
  for (const auto& k : f.kids()) d = std::max(d, quantifier_depth(k));
  return d + (f.is_quantifier() ? 1 : 0);
}

std::size_t quantifier_count(const Formula& f) {
  std::size_t c = f.is_quantifier() ? 1 : 0;
  for (const auto& k : f.kids()) c += quantifier_count(k);
  return c;
}

std::size_t atom_count(const Formula& f) {
  if (f.is_atom()) return 1;
  std::size_t c = 0;
  for (const auto& k : f.kids()) c += atom_count(k);
  return c;
}

bool is_quantifier_free(const Formula& f) { return quantifier_count(f) == 0; }

bool has_group_quantifier(const Formula& f) {
  if (f.is_quantifier() && f.var_sort() == Sort::G) return true;
  return std::any_of(f.kids().begin(), f.kids().end(), has_group_quantifier);
}

bool mentions_compl(const Formula& f) {
  std::function<bool(const Term&)> in_term = [&](const Term& t) {
    if (t.kind() == TermKind::Compl) return true;
    return std::any_of(t.kids().begin(), t.kids().end(), in_term);
  };
  if (f.is_atom()) return in_term(f.lhs()) || in_term(f.rhs());
  return std::any_of(f.kids().begin(), f.kids().end(), mentions_compl);
}

void NameSupply::reserve_all(const Formula& f) {
  for (const auto& n : all_names(f)) used_.insert(n);
}

std::string NameSupply::fresh(const std::string& base) {
  // Strip an existing numeric suffix so repeated renaming stays readable.
  std::string stem = base;
  auto us = stem.rfind('_');
  if (us != std::string::npos && us + 1 < stem.size() &&
      std::all_of(stem.begin() + static_cast<std::ptrdiff_t>(us) + 1, stem.end(), [](char c) { return c >= '0' && c <= '9'; }))
    stem.resize(us);
  if (stem.empty()) stem = "v";
  unsigned& c = counters_[stem];
  std::string name;
  do {
    name = stem + "_" + std::to_string(++c);
  } while (used_.count(name) != 0);
  used_.insert(name);
  return name;
}

Term rebuild(const Term& t, std::vector<Term> kids) {
  switch (t.kind()) {
    case TermKind::Add: return add(kids[0], kids[1]);
    case TermKind::Neg: return neg(kids[0]);
    case TermKind::GMeet: return gmeet(kids[0], kids[1]);
    case TermKind::GJoin: return gjoin(kids[0], kids[1]);
    case TermKind::IntScale: return int_scale(t.scalar(), kids[0]);
    case TermKind::RatScale: return rat_scale(t.scalar(), kids[0]);
    case TermKind::LMeet: return lmeet(kids[0], kids[1]);
    case TermKind::LJoin: return ljoin(kids[0], kids[1]);
    case TermKind::Compl: return lcompl(kids[0]);
    case TermKind::Val: return val(kids[0]);
    default: return t;
  }
}

namespace {

// Shared subterms are visited once.
Term map_term_memo(const Term& t, const std::function<Term(const Term&)>& fn,
                   std::unordered_map<const void*, Term>& memo) {
  if (auto it = memo.find(t.id()); it != memo.end()) return it->second;
  Term out;
  if (t.kids().empty()) {
    out = fn(t);
  } else {
    std::vector<Term> kids;
    kids.reserve(t.kids().size());
    bool same = true;
    for (const auto& k : t.kids()) {
      kids.push_back(map_term_memo(k, fn, memo));
      same = same && kids.back().id() == k.id();
    }
    out = fn(same ? t : rebuild(t, std::move(kids)));
  }
  memo.emplace(t.id(), out);
  return out;
}

}  // namespace

Term map_term(const Term& t, const std::function<Term(const Term&)>& fn) {
  std::unordered_map<const void*, Term> memo;
  return map_term_memo(t, fn, memo);
}

Formula rebuild(const Formula& f, std::vector<Formula> kids) {
  switch (f.kind()) {
    case FormulaKind::Not: return negation(kids[0]);
    case FormulaKind::And: return conj(kids[0], kids[1]);
    case FormulaKind::Or: return disj(kids[0], kids[1]);
    case FormulaKind::Implies: return implies(kids[0], kids[1]);
    case FormulaKind::Exists: case FormulaKind::Forall: return quantifier(f.kind(), f.var(), f.var_sort(), kids[0]);
    default: return f;
  }
}

Formula map_atoms(const Formula& f, const std::function<Formula(const Formula&)>& fn) {
  if (f.is_atom()) return fn(f);
  if (f.kids().empty()) return f;
  std::vector<Formula> kids;
  kids.reserve(f.kids().size());
  for (const auto& k : f.kids()) kids.push_back(map_atoms(k, fn));
  return rebuild(f, std::move(kids));
}

Formula map_atoms_terms(const Formula& f, const std::function<Term(const Term&)>& fn) {
  return map_atoms(f, [&](const Formula& a) {
    Term l = fn(a.lhs()), r = fn(a.rhs());
    switch (a.kind()) {
      case FormulaKind::GLeq: return gleq(l, r);
      case FormulaKind::GEq: return geq(l, r);
      case FormulaKind::LBelow: return lbelow(l, r);
      default: return leq(l, r);
    }
  });
}

Term substitute(const Term& t, const std::string& name, const Term& replacement) {
  return map_term(t, [&](const Term& x) { return x.is_var() && x.name() == name ? replacement : x; });
}

Formula substitute(const Formula& f, const std::string& name, const Term& replacement, NameSupply& names) {
  if (f.is_atom())
    return map_atoms_terms(f, [&](const Term& t) { return substitute(t, name, replacement); });
  if (f.is_quantifier()) {
    if (f.var() == name) return f;
    if (occurs(f.var(), replacement)) {
      std::string v = names.fresh(f.var());
      Formula body = substitute(f.body(), f.var(), var(v, f.var_sort()), names);
      return quantifier(f.kind(), v, f.var_sort(), substitute(body, name, replacement, names));
    }
    return quantifier(f.kind(), f.var(), f.var_sort(), substitute(f.body(), name, replacement, names));
  }
  if (f.kids().empty()) return f;
  std::vector<Formula> kids;
  for (const auto& k : f.kids()) kids.push_back(substitute(k, name, replacement, names));
  return rebuild(f, std::move(kids));
}

Formula rename_apart(const Formula& f, NameSupply& names) {
  if (f.is_quantifier()) {
    std::string v = names.fresh(f.var());
    Formula body = substitute(f.body(), f.var(), var(v, f.var_sort()), names);
    return quantifier(f.kind(), v, f.var_sort(), rename_apart(body, names));
  }
  if (f.is_atom() || f.kids().empty()) return f;
  std::vector<Formula> kids;
  for (const auto& k : f.kids()) kids.push_back(rename_apart(k, names));
  return rebuild(f, std::move(kids));
}

namespace {

Formula nnf_impl(const Formula& f, bool negate) {
  switch (f.kind()) {
    case FormulaKind::True: return negate ? falsef() : truef();
    case FormulaKind::False: return negate ? truef() : falsef();
    case FormulaKind::Not: return nnf_impl(f.kid(0), !negate);
    case FormulaKind::And:
    case FormulaKind::Or: {
      Formula a = nnf_impl(f.kid(0), negate), b = nnf_impl(f.kid(1), negate);
      bool is_and = (f.kind() == FormulaKind::And) != negate;
      return is_and ? conj(a, b) : disj(a, b);
    }
    case FormulaKind::Implies: {
      Formula a = nnf_impl(f.kid(0), !negate), b = nnf_impl(f.kid(1), negate);
      return negate ? conj(a, b) : disj(a, b);
    }
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
      bool is_exists = (f.kind() == FormulaKind::Exists) != negate;
      return quantifier(is_exists ? FormulaKind::Exists : FormulaKind::Forall, f.var(), f.var_sort(),
                        nnf_impl(f.body(), negate));
    }
    default:
      return negate ? negation(f) : f;
  }
}

}  // namespace

Formula nnf(const Formula& f) { return nnf_impl(f, false); }

}  // namespace dvlg::logic
