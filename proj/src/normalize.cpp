#include "dvlg/normalize.hpp"

#include <algorithm>

#include "dvlg/error.hpp"

namespace dvlg::logic {

namespace {

constexpr std::size_t kMaxJoinOfMeets = 4096;

void check_size(const JoinOfMeets& jm) {
  if (jm.size() > kMaxJoinOfMeets)
    throw Error(ErrorKind::ResourceLimit, "meet/join normal form exceeds " + std::to_string(kMaxJoinOfMeets) + " meets");
}

Term piece(const std::string& v, const Rational& c) {
  if (c == Rational(1)) return gvar(v);
  if (c.is_integer()) return int_scale(c, gvar(v));
  return rat_scale(c, gvar(v));
}

}  // namespace

LinearGroupTerm LinearGroupTerm::variable(const std::string& name) {
  LinearGroupTerm t;
  t.coeffs_[name] = Rational(1);
  return t;
}

Rational LinearGroupTerm::coeff(const std::string& name) const {
  auto it = coeffs_.find(name);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

LinearGroupTerm LinearGroupTerm::operator+(const LinearGroupTerm& o) const {
  LinearGroupTerm r = *this;
  for (const auto& [v, c] : o.coeffs_) {
    Rational& slot = r.coeffs_[v];
    slot += c;
    if (slot.is_zero()) r.coeffs_.erase(v);
  }
  return r;
}

LinearGroupTerm LinearGroupTerm::operator-(const LinearGroupTerm& o) const { return *this + (-o); }

LinearGroupTerm LinearGroupTerm::scaled(const Rational& q) const {
  LinearGroupTerm r;
  if (q.is_zero()) return r;
  for (const auto& [v, c] : coeffs_) r.coeffs_[v] = c * q;
  return r;
}

LinearGroupTerm LinearGroupTerm::without(const std::string& name) const {
  LinearGroupTerm r = *this;
  r.coeffs_.erase(name);
  return r;
}

LinearGroupTerm LinearGroupTerm::primitive() const {
  if (is_zero()) return *this;
  mpz_class l = 1, g = 0;
  for (const auto& [v, c] : coeffs_) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.den().get_mpz_t());
    mpz_class n = c.num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
  }
  return scaled(Rational(mpq_class(l, g)));
}

Term LinearGroupTerm::to_term() const {
  if (is_zero()) return zero();
  Term acc;
  auto emit = [&](const std::string& v, const Rational& c) {
    Term p = piece(v, c.abs());
    if (!acc) acc = c.sign() > 0 ? p : neg(p);
    else acc = c.sign() > 0 ? add(acc, p) : sub(acc, p);
  };
  for (const auto& [v, c] : coeffs_)
    if (c.sign() > 0) emit(v, c);
  for (const auto& [v, c] : coeffs_)
    if (c.sign() < 0) emit(v, c);
  return acc;
}

bool operator<(const LinearGroupTerm& a, const LinearGroupTerm& b) {
  return std::lexicographical_compare(a.coeffs_.begin(), a.coeffs_.end(), b.coeffs_.begin(), b.coeffs_.end(),
                                      [](const auto& x, const auto& y) {
                                        if (x.first != y.first) return x.first < y.first;
                                        return x.second < y.second;
                                      });
}

namespace {

JoinOfMeets tidy(JoinOfMeets jm) {
  for (auto& m : jm) {
    std::sort(m.begin(), m.end());
    m.erase(std::unique(m.begin(), m.end()), m.end());
  }
  std::sort(jm.begin(), jm.end());
  jm.erase(std::unique(jm.begin(), jm.end()), jm.end());
  // A meet containing another meet's terms lies below it and is absorbed.
  JoinOfMeets out;
  for (std::size_t i = 0; i < jm.size(); ++i) {
    bool absorbed = false;
    for (std::size_t j = 0; j < jm.size() && !absorbed; ++j)
      if (i != j && jm[j].size() < jm[i].size() && std::includes(jm[i].begin(), jm[i].end(), jm[j].begin(), jm[j].end()))
        absorbed = true;
    if (!absorbed) out.push_back(jm[i]);
  }
  check_size(out);
  return out;
}

JoinOfMeets negate(const JoinOfMeets& jm) {
  // -(join_i meet_j a_ij) = meet_i join_j (-a_ij), redistributed.
  JoinOfMeets acc{{}};
  for (const auto& m : jm) {
    JoinOfMeets next;
    for (const auto& partial : acc) {
      for (const auto& a : m) {
        MeetOfLinear grown = partial;
        grown.push_back(-a);
        next.push_back(std::move(grown));
      }
    }
    acc = tidy(std::move(next));
  }
  return acc;
}

JoinOfMeets scale_jm(const Rational& q, const JoinOfMeets& jm) {
  if (q.is_zero()) return {{LinearGroupTerm()}};
  if (q.sign() < 0) return negate(scale_jm(-q, jm));
  JoinOfMeets out = jm;
  for (auto& m : out)
    for (auto& a : m) a = a.scaled(q);
  return tidy(std::move(out));
}

}  // namespace

JoinOfMeets linearize_group_term(const Term& t) {
  switch (t.kind()) {
    case TermKind::GVar: return {{LinearGroupTerm::variable(t.name())}};
    case TermKind::Zero: return {{LinearGroupTerm()}};
    case TermKind::Add: {
      JoinOfMeets a = linearize_group_term(t.kid(0)), b = linearize_group_term(t.kid(1));
      JoinOfMeets out;
      for (const auto& ma : a)
        for (const auto& mb : b) {
          MeetOfLinear m;
          for (const auto& x : ma)
            for (const auto& y : mb) m.push_back(x + y);
          out.push_back(std::move(m));
        }
      return tidy(std::move(out));
    }
    case TermKind::Neg: return negate(linearize_group_term(t.kid(0)));
    case TermKind::GMeet: {
      JoinOfMeets a = linearize_group_term(t.kid(0)), b = linearize_group_term(t.kid(1));
      JoinOfMeets out;
      for (const auto& ma : a)
        for (const auto& mb : b) {
          MeetOfLinear m = ma;
          m.insert(m.end(), mb.begin(), mb.end());
          out.push_back(std::move(m));
        }
      return tidy(std::move(out));
    }
    case TermKind::GJoin: {
      JoinOfMeets a = linearize_group_term(t.kid(0)), b = linearize_group_term(t.kid(1));
      a.insert(a.end(), b.begin(), b.end());
      return tidy(std::move(a));
    }
    case TermKind::IntScale:
    case TermKind::RatScale: return scale_jm(t.scalar(), linearize_group_term(t.kid(0)));
    default:
      throw Error(ErrorKind::SortError, "linearize_group_term expects a G-sorted term");
  }
}

Term to_term(const JoinOfMeets& jm) {
  Term out;
  for (const auto& m : jm) {
    Term meet_t;
    for (const auto& a : m) meet_t = meet_t ? gmeet(meet_t, a.to_term()) : a.to_term();
    out = out ? gjoin(out, meet_t) : meet_t;
  }
  return out ? out : zero();
}

std::optional<LinearGroupTerm> as_linear(const Term& t) {
  switch (t.kind()) {
    case TermKind::GVar: return LinearGroupTerm::variable(t.name());
    case TermKind::Zero: return LinearGroupTerm();
    case TermKind::Add: {
      auto a = as_linear(t.kid(0)), b = as_linear(t.kid(1));
      if (!a || !b) return std::nullopt;
      return *a + *b;
    }
    case TermKind::Neg: {
      auto a = as_linear(t.kid(0));
      if (!a) return std::nullopt;
      return -*a;
    }
    case TermKind::IntScale:
    case TermKind::RatScale: {
      auto a = as_linear(t.kid(0));
      if (!a) return std::nullopt;
      return a->scaled(t.scalar());
    }
    default: return std::nullopt;
  }
}

Term push_valuation(const Term& t) {
  return map_term(t, [](const Term& x) {
    if (x.kind() != TermKind::Val) return x;
    Term out;
    for (const auto& m : linearize_group_term(x.kid(0))) {
      Term meet_t;
      for (const auto& a : m) {
        Term p = a.is_zero() ? top() : val(a.primitive().to_term());
        meet_t = meet_t ? lmeet(meet_t, p) : p;
      }
      out = out ? ljoin(out, meet_t) : meet_t;
    }
    return simplify(out);
  });
}

Formula push_valuation(const Formula& f) {
  return map_atoms(f, [](const Formula& a) {
    if (a.kind() == FormulaKind::GLeq || a.kind() == FormulaKind::GEq) return a;
    Term l = push_valuation(a.lhs()), r = push_valuation(a.rhs());
    return a.kind() == FormulaKind::LBelow ? lbelow(l, r) : leq(l, r);
  });
}

Formula group_atoms_to_lattice(const Formula& f) {
  return map_atoms(f, [](const Formula& a) {
    switch (a.kind()) {
      case FormulaKind::GLeq: return leq(val(sub(a.rhs(), a.lhs())), top());
      case FormulaKind::GEq:
        return conj(leq(val(sub(a.rhs(), a.lhs())), top()), leq(val(sub(a.lhs(), a.rhs())), top()));
      default: return a;
    }
  });
}

namespace {

std::optional<Term> innermost_compl(const Term& t) {
  for (const auto& k : t.kids())
    if (auto c = innermost_compl(k)) return c;
  if (t.kind() == TermKind::Compl) return t;
  return std::nullopt;
}

Term replace_subterm(const Term& t, const Term& from, const Term& to) {
  if (t == from) return to;
  if (t.kids().empty()) return t;
  std::vector<Term> kids;
  for (const auto& k : t.kids()) kids.push_back(replace_subterm(k, from, to));
  return rebuild(t, std::move(kids));
}

Formula remove_in_atom(const Formula& a, NameSupply& names) {
  std::optional<Term> c = innermost_compl(a.lhs());
  if (!c) c = innermost_compl(a.rhs());
  if (!c) return a;
  const Term s = c->kid(0);
  const Term b = lvar(names.fresh("b"));
  Term l = replace_subterm(a.lhs(), *c, b), r = replace_subterm(a.rhs(), *c, b);
  Formula rest = a.kind() == FormulaKind::LBelow ? lbelow(l, r) : leq(l, r);
  return exists(b.name(), Sort::L,
                conj_all({leq(ljoin(b, s), top()), leq(lmeet(b, s), bot()), remove_in_atom(rest, names)}));
}

}  // namespace

Formula remove_complement(const Formula& f, NameSupply& names) {
  return map_atoms(f, [&](const Formula& a) { return remove_in_atom(a, names); });
}

Formula remove_complement(const Formula& f) {
  NameSupply names;
  names.reserve_all(f);
  return remove_complement(f, names);
}

namespace {

struct Prefix {
  FormulaKind kind;
  std::string var;
  Sort sort;
};

Formula pull(const Formula& f, std::vector<Prefix>& prefix) {
  if (f.is_quantifier()) {
    prefix.push_back({f.kind(), f.var(), f.var_sort()});
    return pull(f.body(), prefix);
  }
  if (f.kind() == FormulaKind::And || f.kind() == FormulaKind::Or) {
    Formula a = pull(f.kid(0), prefix);
    Formula b = pull(f.kid(1), prefix);
    return rebuild(f, {a, b});
  }
  return f;
}

}  // namespace

Formula to_prenex(const Formula& f, NameSupply& names) {
  std::vector<Prefix> prefix;
  Formula out = pull(nnf(rename_apart(f, names)), prefix);
  for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) out = quantifier(it->kind, it->var, it->sort, out);
  return out;
}

Formula to_prenex(const Formula& f) {
  NameSupply names;
  names.reserve_all(f);
  return to_prenex(f, names);
}

namespace {

void flatten_chain(const Term& t, TermKind kind, std::vector<Term>& out) {
  if (t.kind() != kind) {
    out.push_back(t);
    return;
  }
  flatten_chain(t.kid(0), kind, out);
  flatten_chain(t.kid(1), kind, out);
}

}  // namespace

Term simplify(const Term& t) {
  return map_term(t, [](const Term& x) -> Term {
    switch (x.kind()) {
      case TermKind::LMeet:
      case TermKind::LJoin: {
        const bool is_meet = x.kind() == TermKind::LMeet;
        const Term& a = x.kid(0);
        const Term& b = x.kid(1);
        const TermKind absorbing = is_meet ? TermKind::Bot : TermKind::Top;
        const TermKind neutral = is_meet ? TermKind::Top : TermKind::Bot;
        if (a.kind() == absorbing || b.kind() == absorbing) return is_meet ? bot() : top();
        if (a.kind() == neutral) return b;
        if (b.kind() == neutral) return a;
        if (a == b) return a;
        std::vector<Term> ops;
        flatten_chain(x, x.kind(), ops);
        std::vector<Term> kept;
        for (const auto& t : ops) {
          if (std::find(kept.begin(), kept.end(), t) != kept.end()) continue;
          const Term other = t.kind() == TermKind::Compl ? t.kid(0) : lcompl(t);
          if (std::find(kept.begin(), kept.end(), other) != kept.end()) return is_meet ? bot() : top();
          kept.push_back(t);
        }
        if (kept.size() == ops.size()) return x;
        Term out = kept[0];
        for (std::size_t i = 1; i < kept.size(); ++i) out = is_meet ? lmeet(out, kept[i]) : ljoin(out, kept[i]);
        return out;
      }
      case TermKind::Compl: {
        const Term& a = x.kid(0);
        if (a.kind() == TermKind::Top) return bot();
        if (a.kind() == TermKind::Bot) return top();
        if (a.kind() == TermKind::Compl) return a.kid(0);
        return x;
      }
      case TermKind::Val:
        if (x.kid(0).kind() == TermKind::Zero) return top();
        return x;
      default: return x;
    }
  });
}

std::vector<Formula> conjuncts(const Formula& f) {
  if (f.kind() != FormulaKind::And) return {f};
  auto a = conjuncts(f.kid(0)), b = conjuncts(f.kid(1));
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::vector<Formula> disjuncts(const Formula& f) {
  if (f.kind() != FormulaKind::Or) return {f};
  auto a = disjuncts(f.kid(0)), b = disjuncts(f.kid(1));
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

namespace {

bool is_lattice_const(const Term& t) { return t.kind() == TermKind::Top || t.kind() == TermKind::Bot; }

// Constants go right; compl(s) = c becomes s = compl(c).
Formula simplify_leq(Term l, Term r) {
  if (l == r) return truef();
  if (is_lattice_const(l) && !is_lattice_const(r)) std::swap(l, r);
  if (is_lattice_const(l)) return falsef();
  while (is_lattice_const(r) && l.kind() == TermKind::Compl) {
    l = l.kid(0);
    r = r.kind() == TermKind::Top ? bot() : top();
  }
  return leq(l, r);
}

Formula simplify_atom(const Formula& a) {
  Term l = simplify(a.lhs()), r = simplify(a.rhs());
  switch (a.kind()) {
    case FormulaKind::GLeq: return l == r ? truef() : gleq(l, r);
    case FormulaKind::GEq: return l == r ? truef() : geq(l, r);
    case FormulaKind::LBelow:
      if (l == r || l.kind() == TermKind::Bot || r.kind() == TermKind::Top) return truef();
      if (l.kind() == TermKind::Top && r.kind() == TermKind::Bot) return falsef();
      if (r.kind() == TermKind::Bot) return simplify_leq(l, r);
      if (l.kind() == TermKind::Top) return simplify_leq(r, l);
      return lbelow(l, r);
    default: return simplify_leq(l, r);
  }
}

// The term t if `eq` is v = t or t = v with v not occurring in t.
std::optional<Term> defining_term(const Formula& eq, const std::string& v) {
  if (eq.kind() != FormulaKind::LEq && eq.kind() != FormulaKind::GEq) return std::nullopt;
  if (eq.lhs().is_var() && eq.lhs().name() == v && !occurs(v, eq.rhs())) return eq.rhs();
  if (eq.rhs().is_var() && eq.rhs().name() == v && !occurs(v, eq.lhs())) return eq.lhs();
  return std::nullopt;
}

Formula simplify_impl(const Formula& f);

Formula one_point(const Formula& q) {
  const bool is_exists = q.kind() == FormulaKind::Exists;
  const auto parts = is_exists ? conjuncts(q.body()) : disjuncts(q.body());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    std::optional<Term> t;
    if (is_exists) t = defining_term(parts[i], q.var());
    else if (parts[i].kind() == FormulaKind::Not) t = defining_term(parts[i].kid(0), q.var());
    if (!t) continue;
    std::vector<Formula> rest;
    for (std::size_t j = 0; j < parts.size(); ++j)
      if (j != i) rest.push_back(parts[j]);
    Formula body = is_exists ? conj_all(rest) : disj_all(rest);
    NameSupply names;
    names.reserve_all(q);
    return simplify_impl(substitute(body, q.var(), *t, names));
  }
  return q;
}

Formula simplify_impl(const Formula& f) {
  if (f.is_atom()) return simplify_atom(f);
  switch (f.kind()) {
    case FormulaKind::True:
    case FormulaKind::False: return f;
    case FormulaKind::Not: {
      Formula k = simplify_impl(f.kid(0));
      if (k.kind() == FormulaKind::True) return falsef();
      if (k.kind() == FormulaKind::False) return truef();
      if (k.kind() == FormulaKind::Not) return k.kid(0);
      return negation(k);
    }
    case FormulaKind::And:
    case FormulaKind::Or: {
      const bool is_and = f.kind() == FormulaKind::And;
      const FormulaKind absorbing = is_and ? FormulaKind::False : FormulaKind::True;
      const FormulaKind neutral = is_and ? FormulaKind::True : FormulaKind::False;
      Formula a = simplify_impl(f.kid(0));
      if (a.kind() == absorbing) return a;
      Formula b = simplify_impl(f.kid(1));
      if (b.kind() == absorbing) return b;
      if (a.kind() == neutral) return b;
      if (b.kind() == neutral) return a;
      if (a == b) return a;
      return is_and ? conj(a, b) : disj(a, b);
    }
    case FormulaKind::Implies: {
      Formula a = simplify_impl(f.kid(0));
      Formula b = simplify_impl(f.kid(1));
      if (a.kind() == FormulaKind::False || b.kind() == FormulaKind::True) return truef();
      if (a.kind() == FormulaKind::True) return b;
      if (b.kind() == FormulaKind::False) return simplify_impl(negation(a));
      return implies(a, b);
    }
    default: {
      Formula body = simplify_impl(f.body());
      if (!occurs_free(f.var(), body)) return body;
      return one_point(quantifier(f.kind(), f.var(), f.var_sort(), body));
    }
  }
}

}  // namespace

Formula simplify(const Formula& f) { return simplify_impl(f); }

}  // namespace dvlg::logic
