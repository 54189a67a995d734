#include "dvlg/generate.hpp"

namespace dvlg::gen {

using logic::Formula;
using logic::Sort;
using logic::Term;

Term lattice_term(Rng& rng, const std::vector<std::string>& vars, unsigned size) {
  if (size <= 1) {
    if (vars.empty() || rng.coin(0.15)) return rng.coin() ? logic::top() : logic::bot();
    return logic::lvar(vars[rng.index(vars.size())]);
  }
  switch (rng.uniform(0, 2)) {
    case 0: return logic::lcompl(lattice_term(rng, vars, size - 1));
    case 1: return logic::lmeet(lattice_term(rng, vars, size / 2), lattice_term(rng, vars, size - size / 2));
    default: return logic::ljoin(lattice_term(rng, vars, size / 2), lattice_term(rng, vars, size - size / 2));
  }
}

namespace {

struct LatticeGen {
  Rng& rng;
  const LatticeShape& shape;
  unsigned atoms = 0;
  unsigned next_var = 0;

  Formula atom(const std::vector<std::string>& vars) {
    ++atoms;
    Term s = lattice_term(rng, vars, static_cast<unsigned>(rng.uniform(1, shape.term_size)));
    Term t = lattice_term(rng, vars, static_cast<unsigned>(rng.uniform(1, shape.term_size)));
    return rng.coin() ? logic::lbelow(s, t) : logic::leq(s, t);
  }

  Formula formula(std::vector<std::string> vars, unsigned depth_left) {
    const bool budget = atoms + 2 <= shape.max_atoms;
    const long choice = rng.uniform(0, 9);
    if (depth_left > 0 && (choice < 4 || vars.empty())) {
      const std::string v = "x" + std::to_string(++next_var);
      vars.push_back(v);
      Formula body = formula(vars, depth_left - 1);
      return rng.coin() ? logic::exists(v, Sort::L, body) : logic::forall(v, Sort::L, body);
    }
    if (!budget || choice < 6) return atom(vars);
    if (choice == 6) return logic::negation(formula(vars, depth_left));
    Formula a = formula(vars, depth_left);
    Formula b = formula(vars, depth_left > 0 ? depth_left - 1 : 0);
    if (choice == 7) return logic::conj(a, b);
    if (choice == 8) return logic::disj(a, b);
    return logic::implies(a, b);
  }
};

}  // namespace

Formula lattice_sentence(Rng& rng, const LatticeShape& shape) {
  LatticeGen g{rng, shape};
  return g.formula({}, shape.max_depth);
}

}  // namespace dvlg::gen

namespace dvlg::gen {

namespace {

Term linear_term(Rng& rng, const std::vector<std::string>& vars) {
  if (vars.empty() || rng.coin(0.08)) return logic::zero();
  static const long kCoeffs[] = {-2, -1, -1, 1, 1, 1, 2};
  Term out;
  const long count = std::min<long>(static_cast<long>(vars.size()), rng.uniform(1, 2));
  std::vector<std::string> pool = vars;
  for (long i = 0; i < count; ++i) {
    const std::size_t j = rng.index(pool.size());
    const std::string v = pool[j];
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(j));
    const long c = kCoeffs[rng.index(7)];
    Term t = logic::gvar(v);
    if (c == -1) t = logic::neg(t);
    else if (c != 1) t = logic::int_scale(c, t);
    out = out ? logic::add(out, t) : t;
  }
  if (rng.coin(0.1)) out = logic::rat_scale(Rational(1, 2), out);
  return out;
}

Term group_term(Rng& rng, const std::vector<std::string>& vars) {
  const long r = rng.uniform(0, 19);
  if (r == 0) return logic::gmeet(linear_term(rng, vars), linear_term(rng, vars));
  if (r == 1) return logic::gjoin(linear_term(rng, vars), linear_term(rng, vars));
  return linear_term(rng, vars);
}

struct TwoSortedGen {
  Rng& rng;
  const TwoSortedShape& shape;
  unsigned atoms = 0;
  unsigned group_q = 0;
  unsigned lattice_q = 0;
  unsigned next = 0;

  Term lattice_leaf(const std::vector<std::string>& gv, const std::vector<std::string>& lv) {
    const long r = rng.uniform(0, 9);
    if (r < 4 && !gv.empty()) return logic::val(group_term(rng, gv));
    if (r < 8 && !lv.empty()) return logic::lvar(lv[rng.index(lv.size())]);
    if (r == 8) return logic::top();
    if (r == 9) return logic::bot();
    return gv.empty() ? logic::top() : logic::val(group_term(rng, gv));
  }

  Term lattice(const std::vector<std::string>& gv, const std::vector<std::string>& lv, unsigned size) {
    if (size <= 1) return lattice_leaf(gv, lv);
    const long r = rng.uniform(0, shape.allow_compl ? 4 : 3);
    if (r == 4) return logic::lcompl(lattice(gv, lv, size - 1));
    Term x = lattice(gv, lv, size / 2), y = lattice(gv, lv, size - size / 2);
    return r < 2 ? logic::lmeet(x, y) : logic::ljoin(x, y);
  }

  Formula atom(const std::vector<std::string>& gv, const std::vector<std::string>& lv) {
    ++atoms;
    const long r = rng.uniform(0, 19);
    if (r < 6 && !gv.empty()) return logic::gleq(group_term(rng, gv), group_term(rng, gv));
    if (r < 8 && !gv.empty()) return logic::geq(group_term(rng, gv), group_term(rng, gv));
    const unsigned s1 = static_cast<unsigned>(rng.uniform(1, 2)), s2 = static_cast<unsigned>(rng.uniform(1, 3));
    if (r < 16) return logic::lbelow(lattice(gv, lv, s1), lattice(gv, lv, s2));
    return logic::leq(lattice(gv, lv, s1), lattice(gv, lv, s2));
  }

  Formula formula(std::vector<std::string> gv, std::vector<std::string> lv, unsigned budget) {
    const long r = rng.uniform(0, 11);
    const bool room = atoms + 2 <= shape.max_atoms && budget >= 2;
    if (r < 3 && group_q < shape.max_group_quantifiers && gv.size() < shape.max_vars_per_sort) {
      ++group_q;
      const std::string v = "g" + std::to_string(++next);
      gv.push_back(v);
      Formula body = formula(gv, lv, budget);
      const bool ex = shape.positive_existential || rng.coin(0.6);
      return ex ? logic::exists(v, Sort::G, body) : logic::forall(v, Sort::G, body);
    }
    if (r < 5 && lattice_q < shape.max_lattice_quantifiers && lv.size() < shape.max_vars_per_sort) {
      ++lattice_q;
      const std::string v = "y" + std::to_string(++next);
      lv.push_back(v);
      Formula body = formula(gv, lv, budget);
      const bool ex = shape.positive_existential || rng.coin(0.6);
      return ex ? logic::exists(v, Sort::L, body) : logic::forall(v, Sort::L, body);
    }
    if (!room || r < 7) {
      Formula a = atom(gv, lv);
      return !shape.positive_existential && rng.coin(0.2) ? logic::negation(a) : a;
    }
    const unsigned left = budget / 2, right = budget - budget / 2;
    Formula x = formula(gv, lv, left), y = formula(gv, lv, right);
    const long c = rng.uniform(0, shape.positive_existential ? 1 : 2);
    if (c == 0) return logic::conj(x, y);
    if (c == 1) return logic::disj(x, y);
    return logic::implies(x, y);
  }
};

}  // namespace

Formula two_sorted_formula(Rng& rng, const TwoSortedShape& shape) {
  TwoSortedGen g{rng, shape};
  return g.formula(shape.group_params, shape.lattice_params, static_cast<unsigned>(rng.uniform(2, 6)));
}

Formula existential_group_sentence(Rng& rng, unsigned quantifiers, unsigned atoms) {
  std::vector<std::string> vars;
  for (unsigned i = 1; i <= quantifiers; ++i) vars.push_back("v" + std::to_string(i));
  TwoSortedShape shape;
  shape.allow_compl = false;
  TwoSortedGen g{rng, shape};
  std::vector<Formula> parts;
  for (unsigned i = 0; i < atoms; ++i) {
    Formula a = g.atom(vars, {});
    parts.push_back(rng.coin(0.25) ? logic::negation(a) : a);
  }
  Formula f = logic::conj_all(parts);
  for (unsigned i = quantifiers; i > 0; --i) f = logic::exists(vars[i - 1], Sort::G, f);
  return f;
}

}  // namespace dvlg::gen
