#include "dvlg/lra.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "dvlg/error.hpp"

namespace dvlg::lra {

LinExpr LinExpr::variable(VarId v, Rational coeff) {
  LinExpr e;
  if (!coeff.is_zero()) e.coeffs_.emplace_back(v, std::move(coeff));
  return e;
}

Rational LinExpr::coeff(VarId v) const {
  auto it = std::lower_bound(coeffs_.begin(), coeffs_.end(), v, [](const auto& p, VarId x) { return p.first < x; });
  return it != coeffs_.end() && it->first == v ? it->second : Rational(0);
}

LinExpr LinExpr::operator+(const LinExpr& o) const {
  LinExpr r;
  r.constant_ = constant_ + o.constant_;
  auto a = coeffs_.begin(), b = o.coeffs_.begin();
  while (a != coeffs_.end() || b != o.coeffs_.end()) {
    if (b == o.coeffs_.end() || (a != coeffs_.end() && a->first < b->first)) {
      r.coeffs_.push_back(*a++);
    } else if (a == coeffs_.end() || b->first < a->first) {
      r.coeffs_.push_back(*b++);
    } else {
      Rational c = a->second + b->second;
      if (!c.is_zero()) r.coeffs_.emplace_back(a->first, std::move(c));
      ++a;
      ++b;
    }
  }
  return r;
}

LinExpr LinExpr::operator-(const LinExpr& o) const { return *this + (-o); }

LinExpr LinExpr::scaled(const Rational& q) const {
  LinExpr r;
  r.constant_ = constant_ * q;
  if (q.is_zero()) return r;
  r.coeffs_ = coeffs_;
  for (auto& [v, c] : r.coeffs_) c *= q;
  return r;
}

LinExpr LinExpr::substitute(VarId v, const LinExpr& e) const {
  const Rational c = coeff(v);
  if (c.is_zero()) return *this;
  LinExpr rest = *this;
  rest.coeffs_.erase(std::find_if(rest.coeffs_.begin(), rest.coeffs_.end(), [&](const auto& p) { return p.first == v; }));
  return rest + e.scaled(c);
}

bool LinConstraint::holds() const {
  const int s = expr.constant().sign();
  switch (rel) {
    case Rel::Ge: return s >= 0;
    case Rel::Gt: return s > 0;
    case Rel::Eq: return s == 0;
  }
  return false;
}

bool LinConstraint::holds(const std::vector<std::pair<VarId, Rational>>& point) const {
  LinExpr e = expr;
  for (const auto& [v, q] : point) e = e.substitute(v, LinExpr(q));
  if (!e.is_constant()) throw Error(ErrorKind::UnboundVariable, "constraint has unassigned variables");
  return LinConstraint{e, rel}.holds();
}

std::string LinConstraint::str() const {
  std::ostringstream os;
  for (const auto& [v, c] : expr.coeffs()) os << c << "*x" << v << " + ";
  os << expr.constant() << (rel == Rel::Ge ? " >= 0" : rel == Rel::Gt ? " > 0" : " = 0");
  return os.str();
}

LinConstraint normalized(const LinConstraint& c) {
  if (c.is_constant()) return c;
  mpz_class l = 1, g = 0;
  for (const auto& [v, q] : c.expr.coeffs()) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.den().get_mpz_t());
    mpz_class n = q.num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
  }
  Rational f(mpq_class(l, g));
  if (c.rel == Rel::Eq && c.expr.coeffs().front().second.sign() < 0) f = -f;
  return {c.expr.scaled(f), c.rel};
}

LraFormula LraFormula::truth(bool b) {
  static const LraFormula t(std::make_shared<const Node>(Node{Kind::True, {}, {}}));
  static const LraFormula f(std::make_shared<const Node>(Node{Kind::False, {}, {}}));
  return b ? t : f;
}

LraFormula LraFormula::atom(LinConstraint c) {
  if (c.is_constant()) return truth(c.holds());
  return LraFormula(std::make_shared<const Node>(Node{Kind::Atom, normalized(c), {}}));
}

LraFormula LraFormula::all(std::vector<LraFormula> kids) {
  std::vector<LraFormula> keep;
  for (auto& k : kids) {
    if (k.is_false()) return k;
    if (k.is_true()) continue;
    if (k.kind() == Kind::And) keep.insert(keep.end(), k.kids().begin(), k.kids().end());
    else keep.push_back(std::move(k));
  }
  if (keep.empty()) return truth(true);
  if (keep.size() == 1) return keep.front();
  return LraFormula(std::make_shared<const Node>(Node{Kind::And, {}, std::move(keep)}));
}

LraFormula LraFormula::any(std::vector<LraFormula> kids) {
  std::vector<LraFormula> keep;
  for (auto& k : kids) {
    if (k.is_true()) return k;
    if (k.is_false()) continue;
    if (k.kind() == Kind::Or) keep.insert(keep.end(), k.kids().begin(), k.kids().end());
    else keep.push_back(std::move(k));
  }
  if (keep.empty()) return truth(false);
  if (keep.size() == 1) return keep.front();
  return LraFormula(std::make_shared<const Node>(Node{Kind::Or, {}, std::move(keep)}));
}

LraFormula LraFormula::negate(const LraFormula& f) {
  if (f.is_constant()) return truth(f.is_false());
  if (f.kind() == Kind::Not) return f.kids().front();
  return LraFormula(std::make_shared<const Node>(Node{Kind::Not, {}, {f}}));
}

std::size_t LraFormula::size() const {
  std::size_t s = 1;
  for (const auto& k : kids()) s += k.size();
  return s;
}

LraFormula operator&&(const LraFormula& a, const LraFormula& b) { return LraFormula::all({a, b}); }
LraFormula operator||(const LraFormula& a, const LraFormula& b) { return LraFormula::any({a, b}); }
LraFormula operator!(const LraFormula& a) { return LraFormula::negate(a); }

namespace {

using Key = std::vector<std::pair<VarId, Rational>>;

Key negated_key(const Key& k) {
  Key out = k;
  for (auto& [v, c] : out) c = -c;
  return out;
}

struct Bound {
  Rational constant;
  bool strict;
};

}  // namespace

std::optional<Conjunction> tidy(Conjunction c) {
  std::map<Key, Bound> ineqs;
  std::map<Key, Rational> eqs;
  for (const auto& raw : c) {
    LinConstraint n = normalized(raw);
    if (n.is_constant()) {
      if (!n.holds()) return std::nullopt;
      continue;
    }
    const Key& key = n.expr.coeffs();
    const Rational& k = n.expr.constant();
    if (n.rel == Rel::Eq) {
      auto [it, fresh] = eqs.emplace(key, k);
      if (!fresh && it->second != k) return std::nullopt;
      continue;
    }
    const bool strict = n.rel == Rel::Gt;
    auto it = ineqs.find(key);
    if (it == ineqs.end()) {
      ineqs.emplace(key, Bound{k, strict});
    } else if (k < it->second.constant || (k == it->second.constant && strict)) {
      it->second = Bound{k, strict};
    }
  }
  // Inequalities against equalities and against their opposites.
  for (auto it = ineqs.begin(); it != ineqs.end();) {
    const Key& key = it->first;
    const Bound& b = it->second;
    bool redundant = false;
    for (int sign : {1, -1}) {
      const Key probe = sign == 1 ? key : negated_key(key);
      auto e = eqs.find(probe);
      if (e == eqs.end()) continue;
      // Here key.x = -sign * e_const.
      const Rational value = b.constant - Rational(sign) * e->second;
      if (value.sign() < 0 || (value.is_zero() && b.strict)) return std::nullopt;
      redundant = true;
    }
    auto opp = ineqs.find(negated_key(key));
    if (opp != ineqs.end()) {
      const Rational sum = b.constant + opp->second.constant;
      if (sum.sign() < 0 || (sum.is_zero() && (b.strict || opp->second.strict))) return std::nullopt;
    }
    it = redundant ? ineqs.erase(it) : std::next(it);
  }
  Conjunction out;
  for (const auto& [key, k] : eqs) {
    LinExpr e;
    for (const auto& [v, q] : key) e = e + LinExpr::variable(v, q);
    out.push_back({e + LinExpr(k), Rel::Eq});
  }
  for (const auto& [key, b] : ineqs) {
    LinExpr e;
    for (const auto& [v, q] : key) e = e + LinExpr::variable(v, q);
    out.push_back({e + LinExpr(b.constant), b.strict ? Rel::Gt : Rel::Ge});
  }
  return out;
}

namespace {

bool conj_less(const Conjunction& a, const Conjunction& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), [](const LinConstraint& x, const LinConstraint& y) {
    return x.str() < y.str();
  });
}

bool conj_equal(const Conjunction& a, const Conjunction& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a[i].expr == b[i].expr) || a[i].rel != b[i].rel) return false;
  return true;
}

void dedup(Dnf& d) {
  std::sort(d.begin(), d.end(), conj_less);
  d.erase(std::unique(d.begin(), d.end(), conj_equal), d.end());
}

Dnf dnf_impl(const LraFormula& f, bool neg, std::size_t limit) {
  using K = LraFormula::Kind;
  switch (f.kind()) {
    case K::True: return neg ? Dnf{} : Dnf{{}};
    case K::False: return neg ? Dnf{{}} : Dnf{};
    case K::Not: return dnf_impl(f.kids().front(), !neg, limit);
    case K::Atom: {
      const LinConstraint& c = f.constraint();
      if (!neg) return {{c}};
      switch (c.rel) {
        case Rel::Ge: return {{{-c.expr, Rel::Gt}}};
        case Rel::Gt: return {{{-c.expr, Rel::Ge}}};
        case Rel::Eq: return {{{c.expr, Rel::Gt}}, {{-c.expr, Rel::Gt}}};
      }
      return {};
    }
    case K::And:
    case K::Or: {
      const bool conjunctive = (f.kind() == K::And) != neg;
      if (!conjunctive) {
        Dnf out;
        for (const auto& k : f.kids()) {
          Dnf d = dnf_impl(k, neg, limit);
          for (auto& c : d) {
            if (c.empty()) return Dnf{{}};
            out.push_back(std::move(c));
          }
          if (out.size() > limit) throw Error(ErrorKind::ResourceLimit, "disjunctive normal form too large");
        }
        dedup(out);
        return out;
      }
      Dnf acc{{}};
      // Smaller factors first keeps intermediate products small.
      std::vector<Dnf> factors;
      for (const auto& k : f.kids()) {
        factors.push_back(dnf_impl(k, neg, limit));
        if (factors.back().empty()) return {};
      }
      std::sort(factors.begin(), factors.end(), [](const Dnf& a, const Dnf& b) { return a.size() < b.size(); });
      for (const auto& d : factors) {
        Dnf next;
        for (const auto& a : acc)
          for (const auto& b : d) {
            Conjunction c = a;
            c.insert(c.end(), b.begin(), b.end());
            if (auto t = tidy(std::move(c))) next.push_back(std::move(*t));
            if (next.size() > limit) throw Error(ErrorKind::ResourceLimit, "disjunctive normal form too large");
          }
        dedup(next);
        acc = std::move(next);
        if (acc.empty()) return acc;
      }
      return acc;
    }
  }
  return {};
}

}  // namespace

Dnf to_dnf(const LraFormula& f, std::size_t limit) { return dnf_impl(f, false, limit); }

LraFormula from_dnf(const Dnf& d) {
  std::vector<LraFormula> ors;
  for (const auto& c : d) {
    std::vector<LraFormula> ands;
    for (const auto& a : c) ands.push_back(LraFormula::atom(a));
    ors.push_back(LraFormula::all(std::move(ands)));
  }
  return LraFormula::any(std::move(ors));
}

std::optional<Conjunction> fm_eliminate(VarId v, Conjunction c) {
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i].rel != Rel::Eq) continue;
    const Rational a = c[i].expr.coeff(v);
    if (a.is_zero()) continue;
    // v = -(rest)/a
    LinExpr rest = c[i].expr - LinExpr::variable(v, a);
    LinExpr solution = rest.scaled(Rational(-1) / a);
    Conjunction out;
    for (std::size_t j = 0; j < c.size(); ++j)
      if (j != i) out.push_back({c[j].expr.substitute(v, solution), c[j].rel});
    return tidy(std::move(out));
  }
  Conjunction lowers, uppers, out;
  for (auto& k : c) {
    const int s = k.expr.coeff(v).sign();
    if (s > 0) lowers.push_back(std::move(k));
    else if (s < 0) uppers.push_back(std::move(k));
    else out.push_back(std::move(k));
  }
  for (const auto& lo : lowers) {
    const Rational a = lo.expr.coeff(v);
    for (const auto& up : uppers) {
      const Rational b = -up.expr.coeff(v);
      LinExpr combined = lo.expr.scaled(b) + up.expr.scaled(a);
      const bool strict = lo.rel == Rel::Gt || up.rel == Rel::Gt;
      out.push_back({combined, strict ? Rel::Gt : Rel::Ge});
    }
  }
  return tidy(std::move(out));
}

Dnf fm_eliminate(VarId v, const Dnf& d) {
  Dnf out;
  for (const auto& c : d)
    if (auto r = fm_eliminate(v, c)) out.push_back(std::move(*r));
  dedup(out);
  return out;
}

LraFormula eliminate(const std::vector<VarId>& vars, const LraFormula& f, std::size_t limit) {
  if (f.is_constant()) return f;
  Dnf d = to_dnf(f, limit);
  Dnf out;
  for (auto c : d) {
    bool feasible = true;
    for (VarId v : vars) {
      auto r = fm_eliminate(v, std::move(c));
      if (!r) {
        feasible = false;
        break;
      }
      c = std::move(*r);
    }
    if (!feasible) continue;
    if (c.empty()) return LraFormula::truth(true);
    out.push_back(std::move(c));
  }
  dedup(out);
  return from_dnf(out);
}

bool evaluate(const LraFormula& f, const std::vector<std::pair<VarId, Rational>>& point) {
  using K = LraFormula::Kind;
  switch (f.kind()) {
    case K::True: return true;
    case K::False: return false;
    case K::Atom: return f.constraint().holds(point);
    case K::Not: return !evaluate(f.kids().front(), point);
    case K::And:
      return std::all_of(f.kids().begin(), f.kids().end(), [&](const LraFormula& k) { return evaluate(k, point); });
    case K::Or:
      return std::any_of(f.kids().begin(), f.kids().end(), [&](const LraFormula& k) { return evaluate(k, point); });
  }
  return false;
}

}  // namespace dvlg::lra

namespace dvlg::lra {

std::optional<Point> find_point(const Conjunction& input) {
  auto cur = tidy(input);
  if (!cur) return std::nullopt;
  std::vector<VarId> vars;
  for (const auto& k : *cur)
    for (const auto& [v, q] : k.expr.coeffs())
      if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
  std::sort(vars.begin(), vars.end());
  std::vector<Conjunction> stages;
  for (VarId v : vars) {
    stages.push_back(*cur);
    cur = fm_eliminate(v, std::move(*cur));
    if (!cur) return std::nullopt;
  }
  for (const auto& k : *cur)
    if (!k.holds()) return std::nullopt;

  Point point;
  for (std::size_t i = vars.size(); i-- > 0;) {
    const VarId v = vars[i];
    std::optional<Rational> fixed, lo, hi;
    bool lo_strict = false, hi_strict = false;
    for (const auto& k : stages[i]) {
      LinExpr e = k.expr;
      for (const auto& [w, q] : point) e = e.substitute(w, LinExpr(q));
      const Rational a = e.coeff(v);
      if (a.is_zero()) continue;
      const Rational bound = -e.constant() / a;
      if (k.rel == Rel::Eq) {
        fixed = bound;
      } else if (a.sign() > 0) {
        if (!lo || bound > *lo || (bound == *lo && k.rel == Rel::Gt)) {
          lo = bound;
          lo_strict = k.rel == Rel::Gt;
        }
      } else if (!hi || bound < *hi || (bound == *hi && k.rel == Rel::Gt)) {
        hi = bound;
        hi_strict = k.rel == Rel::Gt;
      }
    }
    Rational value(0);
    if (fixed) value = *fixed;
    else if (lo && hi) value = (*lo == *hi) ? *lo : (*lo + *hi) / Rational(2);
    else if (lo) value = lo_strict ? *lo + Rational(1) : *lo;
    else if (hi) value = hi_strict ? *hi - Rational(1) : *hi;
    point.emplace_back(v, value);
  }
  for (const auto& k : input)
    if (!k.holds(point)) throw Error(ErrorKind::PreconditionViolated, "internal: back-substitution missed " + k.str());
  return point;
}

namespace {

void mentioned(const LraFormula& f, std::vector<VarId>& out) {
  if (f.kind() == LraFormula::Kind::Atom) {
    for (const auto& [v, q] : f.constraint().expr.coeffs())
      if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  for (const auto& k : f.kids()) mentioned(k, out);
}

}  // namespace

std::optional<Point> find_point(const LraFormula& f, std::size_t limit) {
  if (f.is_false()) return std::nullopt;
  std::vector<VarId> vars;
  mentioned(f, vars);
  std::sort(vars.begin(), vars.end());
  for (const auto& c : to_dnf(f, limit)) {
    auto p = find_point(c);
    if (!p) continue;
    Point full;
    for (VarId v : vars) {
      auto it = std::find_if(p->begin(), p->end(), [&](const auto& e) { return e.first == v; });
      full.emplace_back(v, it == p->end() ? Rational(0) : it->second);
    }
    if (!evaluate(f, full)) throw Error(ErrorKind::PreconditionViolated, "internal: point fails the formula");
    return full;
  }
  return std::nullopt;
}

}  // namespace dvlg::lra
