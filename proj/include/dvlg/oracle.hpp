#pragma once

// Brute-force truth in Stan(Q^X). Lattice quantifiers range over all 2^n
// subsets; a group quantifier becomes n rational unknowns, one per point,
// removed by Fourier-Motzkin elimination.

#include <cstddef>
#include <map>
#include <string>

#include "dvlg/core_algebra.hpp"
#include "dvlg/lra.hpp"
#include "dvlg/syntax.hpp"

namespace dvlg::oracle {

struct Assignment {
  std::map<std::string, GroupVector> group_env;
  std::map<std::string, SubsetL> lattice_env;
};

struct Limits {
  std::size_t max_n = 4;
  std::size_t max_quantifiers = 6;
  std::size_t max_atoms = 64;
  std::size_t max_disjuncts = 200000;
};

struct Stats {
  std::size_t group_eliminations = 0;
  std::size_t lattice_branches = 0;
};

GroupVector eval_group_term(const logic::Term& t, const Assignment& env, std::size_t n);
SubsetL eval_lattice_term(const logic::Term& t, const Assignment& env, std::size_t n);

/// Truth of a quantifier-free formula. Throws Error(UnboundVariable).
bool eval_qf(const FinStdStructure& s, const Assignment& env, const logic::Formula& f);

/// Truth of f in Stan(Q^n) under env. Throws Error(ResourceLimit | UnboundVariable).
bool decide_finite(const FinStdStructure& s, const logic::Formula& f, const Assignment& env = {},
                   const Limits& limits = {}, Stats* stats = nullptr);

}  // namespace dvlg::oracle
