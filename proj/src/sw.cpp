#include "dvlg/sw.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "dvlg/ba.hpp"
#include "dvlg/error.hpp"
#include "dvlg/parser.hpp"

namespace dvlg::sw {

using logic::Formula;
using logic::FormulaKind;
using logic::LinearGroupTerm;
using logic::NameSupply;
using logic::Sort;
using logic::Term;
using logic::TermKind;

const char* to_string(Mode m) { return m == Mode::TPlus ? "tplus" : "ec"; }

Mode parse_mode(const std::string& s) {
  if (s == "tplus") return Mode::TPlus;
  if (s == "ec") return Mode::EC;
  throw Error(ErrorKind::PreconditionViolated, "unknown mode '" + s + "' (expected tplus or ec)");
}

Formula eliminate_group_var(const PrimitiveBlock& block) {
  const std::string& a = block.variable;
  for (const auto* side : {&block.lowers, &block.uppers})
    for (const auto& b : *side)
      if (b.bound.mentions(a) || logic::occurs(a, b.region))
        throw Error(ErrorKind::NotPrimitive, a + " is not isolated in a bound on region " + logic::print(b.region));
  std::vector<Formula> out;
  for (const auto& lo : block.lowers)
    for (const auto& up : block.uppers) {
      Term cond = logic::val((up.bound - lo.bound).to_term());
      if (lo.strict || up.strict) cond = logic::lmeet(cond, logic::lcompl(logic::val((lo.bound - up.bound).to_term())));
      out.push_back(logic::simplify(logic::push_valuation(logic::lbelow(logic::lmeet(lo.region, up.region), cond))));
    }
  return logic::simplify(logic::conj_all(out));
}

namespace {

constexpr std::size_t kMaxDisjuncts = 20000;

struct Context {
  Mode mode;
  NameSupply& names;
  std::size_t eliminations = 0;
  std::vector<std::string>* trace = nullptr;
};

// ---- Boolean terms split over their valuation leaves.

struct Leaf {
  Term t;
  bool pos;
};
using Meet = std::vector<Leaf>;

void dependent_leaves(const std::string& a, const Term& t, std::vector<Term>& out) {
  if (t.kind() == TermKind::Val) {
    if (logic::occurs(a, t) && std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
    return;
  }
  for (const auto& k : t.kids()) dependent_leaves(a, k, out);
}

// t as a join over sign patterns of its a-dependent leaves, each meet
// carrying the a-free cofactor as one leaf.
std::vector<Meet> shannon_dnf(const std::string& a, const Term& t) {
  std::vector<Term> leaves;
  dependent_leaves(a, t, leaves);
  if (leaves.size() > 12) throw Error(ErrorKind::ResourceLimit, "too many valuation leaves in one term");
  std::vector<Meet> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << leaves.size()); ++mask) {
    Term c = logic::simplify(logic::map_term(t, [&](const Term& x) {
      for (std::size_t i = 0; i < leaves.size(); ++i)
        if (x == leaves[i]) return (mask >> i) & 1 ? logic::top() : logic::bot();
      return x;
    }));
    if (c.kind() == TermKind::Bot) continue;
    Meet m;
    if (c.kind() != TermKind::Top) m.push_back(Leaf{c, true});
    for (std::size_t i = 0; i < leaves.size(); ++i) m.push_back(Leaf{leaves[i], ((mask >> i) & 1) != 0});
    out.push_back(std::move(m));
  }
  return out;
}

Term meet_term(const Meet& m) {
  Term out = logic::top();
  for (const auto& l : m) out = logic::lmeet(out, l.pos ? l.t : logic::lcompl(l.t));
  return logic::simplify(out);
}

// ---- formula DNF whose leaves are a-free subformulas or a-dependent lattice atoms.

struct Lit {
  enum class Kind { Opaque, Empty, Nonempty } kind;
  Formula opaque;
  Term t;
};
using LitConj = std::vector<Lit>;
using LitDnf = std::vector<LitConj>;

Term atom_term(const Formula& a) {
  const Term& s = a.lhs();
  const Term& t = a.rhs();
  if (a.kind() == FormulaKind::LBelow) return logic::simplify(logic::lmeet(s, logic::lcompl(t)));
  return logic::simplify(logic::ljoin(logic::lmeet(s, logic::lcompl(t)), logic::lmeet(t, logic::lcompl(s))));
}

LitDnf lit_dnf(const std::string& a, const Formula& f, bool neg) {
  if (f.kind() == FormulaKind::True) return neg ? LitDnf{} : LitDnf{{}};
  if (f.kind() == FormulaKind::False) return neg ? LitDnf{{}} : LitDnf{};
  if (!logic::occurs_free(a, f)) return {{Lit{Lit::Kind::Opaque, neg ? logic::negation(f) : f, {}}}};
  switch (f.kind()) {
    case FormulaKind::Not: return lit_dnf(a, f.kid(0), !neg);
    case FormulaKind::Implies: return lit_dnf(a, logic::disj(logic::negation(f.kid(0)), f.kid(1)), neg);
    case FormulaKind::And:
    case FormulaKind::Or: {
      const bool conjunctive = (f.kind() == FormulaKind::And) != neg;
      LitDnf x = lit_dnf(a, f.kid(0), neg), y = lit_dnf(a, f.kid(1), neg);
      if (!conjunctive) {
        x.insert(x.end(), y.begin(), y.end());
        return x;
      }
      LitDnf out;
      for (const auto& p : x)
        for (const auto& q : y) {
          LitConj c = p;
          c.insert(c.end(), q.begin(), q.end());
          out.push_back(std::move(c));
          if (out.size() > kMaxDisjuncts) throw Error(ErrorKind::ResourceLimit, "matrix DNF too large");
        }
      return out;
    }
    case FormulaKind::LBelow:
    case FormulaKind::LEq: {
      Term t = atom_term(f);
      if (t.kind() == TermKind::Bot) return neg ? LitDnf{} : LitDnf{{}};
      if (t.kind() == TermKind::Top) return neg ? LitDnf{{}} : LitDnf{};
      return {{Lit{neg ? Lit::Kind::Nonempty : Lit::Kind::Empty, {}, t}}};
    }
    default:
      throw Error(ErrorKind::UnsupportedFragment,
                  "group variable " + a + " occurs under " + logic::print(f).substr(0, 60));
  }
}

std::optional<LinearGroupTerm> dependent_leaf(const std::string& a, const Term& leaf) {
  if (leaf.kind() != TermKind::Val) return std::nullopt;
  auto l = logic::as_linear(leaf.kid(0));
  if (!l) throw Error(ErrorKind::NotPrimitive, "valuation of a non-linear term " + logic::print(leaf));
  if (!l->mentions(a)) return std::nullopt;
  return l;
}

class DisjunctEliminator {
 public:
  DisjunctEliminator(const std::string& a, Context& ctx) : a_(a), ctx_(ctx) {}

  Formula run(const LitConj& c) {
    std::vector<Formula> out;
    for (const auto& l : c) {
      switch (l.kind) {
        case Lit::Kind::Opaque: out.push_back(l.opaque); break;
        case Lit::Kind::Empty:
          for (const auto& m : shannon_dnf(a_, l.t)) clause(m, out);
          break;
        case Lit::Kind::Nonempty: {
          Term t = logic::map_term(l.t, [&](const Term& x) {
            auto lin = x.kind() == TermKind::Val ? dependent_leaf(a_, x) : std::nullopt;
            return lin ? z_for(*lin) : x;
          });
          out.push_back(logic::negation(logic::leq(logic::simplify(t), logic::bot())));
          break;
        }
      }
    }
    PrimitiveBlock block{a_, {}, {}};
    for (const auto* side : {&lowers_, &uppers_})
      for (const auto& p : *side) {
        Term region = logic::bot();
        for (const auto& r : p.regions) region = logic::ljoin(region, r);
        (side == &lowers_ ? block.lowers : block.uppers).push_back(Bound{logic::simplify(region), p.bound, p.strict});
      }
    out.push_back(eliminate_group_var(block));
    ++ctx_.eliminations;
    Formula r = logic::simplify(logic::conj_all(out));
    for (auto it = zs_.rbegin(); it != zs_.rend(); ++it)
      if (logic::occurs_free(it->second, r)) r = logic::exists(it->second, Sort::L, r);
    return r;
  }

 private:
  // clause: meet of leaves equals bottom.
  void clause(const Meet& m, std::vector<Formula>& out) {
    Meet region;
    std::vector<std::pair<LinearGroupTerm, bool>> dep;
    for (const auto& leaf : m) {
      if (auto lin = dependent_leaf(a_, leaf.t)) dep.emplace_back(*lin, leaf.pos);
      else region.push_back(leaf);
    }
    if (dep.empty()) {
      out.push_back(logic::leq(meet_term(region), logic::bot()));
      return;
    }
    for (std::size_t i = 0; i + 1 < dep.size(); ++i) region.push_back(Leaf{z_for(dep[i].first), dep[i].second});
    Term r = meet_term(region);
    if (r.kind() == TermKind::Bot) return;
    // c & P(l) = bot: l < 0 on c;  c & compl P(l) = bot: l >= 0 on c.
    add_bound(r, dep.back().first, !dep.back().second);
  }

  void add_bound(const Term& region, const LinearGroupTerm& l, bool nonneg) {
    const Rational alpha = l.coeff(a_);
    LinearGroupTerm b = l.without(a_).scaled(Rational(-1) / alpha);
    const bool lower = (alpha.sign() > 0) == nonneg;
    auto& side = lower ? lowers_ : uppers_;
    for (auto& x : side)
      if (x.strict == !nonneg && x.bound == b) {
        if (std::find(x.regions.begin(), x.regions.end(), region) == x.regions.end()) x.regions.push_back(region);
        return;
      }
    side.push_back(PartialBound{{region}, b, !nonneg});
  }

  Term z_for(const LinearGroupTerm& l) {
    for (const auto& [lin, name] : zs_)
      if (lin == l) return logic::lvar(name);
    const std::string z = ctx_.names.fresh("z");
    zs_.emplace_back(l, z);
    add_bound(logic::lvar(z), l, true);
    add_bound(logic::lcompl(logic::lvar(z)), l, false);
    return logic::lvar(z);
  }

  const std::string& a_;
  Context& ctx_;
  // Bounds sharing a value and strictness, with their regions joined.
  struct PartialBound {
    std::vector<Term> regions;
    LinearGroupTerm bound;
    bool strict;
  };
  std::vector<PartialBound> lowers_, uppers_;
  std::vector<std::pair<LinearGroupTerm, std::string>> zs_;
};

// Pulls a-dependent lattice existentials out through & and |. Any other
// a-dependent quantified subformula is rejected in tplus mode and replaced by
// its atomless quantifier-free equivalent in ec mode.
Formula hoist(const std::string& a, const Formula& f, std::vector<std::string>& vars, Context& ctx) {
  if (!logic::occurs_free(a, f) || f.is_atom()) return f;
  switch (f.kind()) {
    case FormulaKind::And:
    case FormulaKind::Or: {
      std::vector<Formula> kids;
      for (const auto& k : f.kids()) kids.push_back(hoist(a, k, vars, ctx));
      return logic::rebuild(f, std::move(kids));
    }
    case FormulaKind::Exists:
      if (f.var_sort() == Sort::L) {
        vars.push_back(f.var());
        return hoist(a, f.body(), vars, ctx);
      }
      break;
    default:
      if (logic::is_quantifier_free(f)) return f;
      break;
  }
  if (ctx.mode == Mode::EC) return ba::ba_qe(f);
  throw Error(ErrorKind::UnsupportedFragment, "group quantifier over " + a +
                                                  " scopes over a lattice quantifier it cannot be exchanged with: " +
                                                  logic::print(f).substr(0, 80));
}

Formula exists_group(const std::string& a, const Formula& body, Context& ctx) {
  if (!logic::occurs_free(a, body)) return body;
  std::vector<Formula> free, dep;
  for (const auto& c : logic::conjuncts(body)) (logic::occurs_free(a, c) ? dep : free).push_back(c);
  std::vector<std::string> vars;
  Formula matrix = hoist(a, logic::conj_all(dep), vars, ctx);
  std::vector<Formula> parts;
  for (const auto& c : lit_dnf(a, matrix, false)) {
    Formula r = DisjunctEliminator(a, ctx).run(c);
    if (r.kind() == FormulaKind::True) {
      parts = {r};
      break;
    }
    parts.push_back(r);
  }
  Formula r = logic::simplify(logic::disj_all(parts));
  for (auto it = vars.rbegin(); it != vars.rend(); ++it)
    if (logic::occurs_free(*it, r)) r = logic::exists(*it, Sort::L, r);
  free.push_back(r);
  r = logic::simplify(logic::conj_all(free));
  if (ctx.trace) ctx.trace->push_back("eliminate " + a + ": " + logic::print(r));
  return r;
}

Formula eliminate_all(const Formula& f, Context& ctx) {
  if (f.is_atom() || f.kids().empty()) return f;
  if (f.is_quantifier() && f.var_sort() == Sort::G) {
    Formula body = eliminate_all(f.body(), ctx);
    if (f.kind() == FormulaKind::Exists) return exists_group(f.var(), body, ctx);
    Formula neg = logic::nnf(logic::negation(body));
    return logic::simplify(logic::nnf(logic::negation(exists_group(f.var(), neg, ctx))));
  }
  std::vector<Formula> kids;
  for (const auto& k : f.kids()) kids.push_back(eliminate_all(k, ctx));
  return logic::simplify(logic::rebuild(f, std::move(kids)));
}

void collect_vals(const Term& t, std::vector<Term>& out) {
  if (t.kind() == TermKind::Val) {
    if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
    return;
  }
  for (const auto& k : t.kids()) collect_vals(k, out);
}

void collect_vals(const Formula& f, std::vector<Term>& out) {
  if (f.is_atom()) {
    collect_vals(f.lhs(), out);
    collect_vals(f.rhs(), out);
    return;
  }
  for (const auto& k : f.kids()) collect_vals(k, out);
}

}  // namespace

Formula eliminate_exists(const std::string& a, const Formula& body, Mode mode, NameSupply& names) {
  Context ctx{mode, names};
  names.reserve_all(body);
  return exists_group(a, body, ctx);
}

Formula ReductionOutput::assemble() const {
  std::vector<Formula> parts{chi};
  for (std::size_t i = 0; i < k; ++i) parts.push_back(logic::leq(logic::lvar(names[i]), logic::val(terms[i])));
  Formula out = logic::conj_all(parts);
  for (std::size_t i = k; i-- > 0;) out = logic::exists(names[i], Sort::L, out);
  return out;
}

ReductionOutput reduce(const Formula& input, Mode mode) {
  logic::sort_check(input);
  NameSupply names;
  names.reserve_all(input);
  ReductionOutput out;
  out.mode = mode;
  Formula f = logic::rename_apart(input, names);
  f = logic::simplify(logic::push_valuation(logic::group_atoms_to_lattice(f)));
  f = logic::nnf(f);
  out.trace.push_back("lattice form: " + logic::print(f));
  Context ctx{mode, names};
  ctx.trace = &out.trace;
  f = eliminate_all(f, ctx);
  if (mode == Mode::EC) f = ba::ba_qe(f);
  f = logic::simplify(f);
  out.eliminations = ctx.eliminations;

  std::vector<Term> vals;
  collect_vals(f, vals);
  for (const auto& v : vals) {
    out.terms.push_back(v.kid(0));
    out.names.push_back(names.fresh("p"));
  }
  out.k = vals.size();
  out.chi = logic::map_atoms_terms(f, [&](const Term& t) {
    return logic::map_term(t, [&](const Term& x) {
      if (x.kind() != TermKind::Val) return x;
      auto it = std::find(vals.begin(), vals.end(), x);
      return logic::lvar(out.names[static_cast<std::size_t>(it - vals.begin())]);
    });
  });
  out.trace.push_back("chi: " + logic::print(out.chi));
  return out;
}

bool decide_ec(const Formula& sentence) {
  logic::sort_check(sentence);
  if (!logic::free_vars(sentence).empty())
    throw Error(ErrorKind::NotSentence, "free variable " + logic::free_vars(sentence).front().first);
  ReductionOutput r = reduce(sentence, Mode::EC);
  return ba::ba_decide(r.assemble());
}

bool is_positive_existential(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Not:
    case FormulaKind::Implies:
    case FormulaKind::Forall: return false;
    default:
      for (const auto& k : f.kids())
        if (!is_positive_existential(k)) return false;
      return true;
  }
}

}  // namespace dvlg::sw
