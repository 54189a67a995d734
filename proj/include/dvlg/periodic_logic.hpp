#pragma once

// Formulas over the periodic model: quantifier-free evaluation and a bounded
// search for witnesses of existential sentences.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dvlg/periodic.hpp"
#include "dvlg/syntax.hpp"

namespace dvlg::periodic {

struct PeriodicEnv {
  std::map<std::string, PeriodicFn> group;
  std::map<std::string, PeriodicSet> lattice;
};

/// Throws Error(UnboundVariable).
PeriodicFn eval_group_term(const logic::Term& t, const PeriodicEnv& env);
PeriodicSet eval_lattice_term(const logic::Term& t, const PeriodicEnv& env);
/// Throws Error(PreconditionViolated) on quantifiers.
bool eval_qf(const logic::Formula& f, const PeriodicEnv& env);

struct WitnessOptions {
  std::size_t max_period = 64;
  std::vector<Rational> grid{Rational(-2), Rational(-1), Rational(0), Rational(1, 2), Rational(1), Rational(2)};
  /// When no grid witness exists, solve each needed column exactly.
  bool exact_columns = false;
};

struct Witness {
  std::map<std::string, PeriodicFn> values;
  /// Some column came from the exact solver rather than the grid.
  bool exact = false;
};

/// For exists v_1..v_q:G. M with M quantifier-free and free of lattice
/// variables: periodic functions satisfying M, if any are found. Every atom
/// holds iff it holds at each point, so only the set of value columns
/// matters; the grid search is complete over grid-valued witnesses whose
/// column set fits in one period. Throws Error(PreconditionViolated | ResourceLimit).
std::optional<Witness> find_witness(const logic::Formula& sentence, const WitnessOptions& options = {});

/// True when the sentence has the shape accepted by find_witness.
bool is_existential_group_sentence(const logic::Formula& sentence);

}  // namespace dvlg::periodic
