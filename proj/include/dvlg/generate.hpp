#pragma once

// Random formula generators for property tests and corpora.

#include <string>
#include <vector>

#include "dvlg/random.hpp"
#include "dvlg/syntax.hpp"

namespace dvlg::gen {

struct LatticeShape {
  unsigned max_depth = 3;
  unsigned max_atoms = 6;
  unsigned term_size = 3;
};

/// A closed L-sorted sentence with quantifier depth at most max_depth.
logic::Formula lattice_sentence(Rng& rng, const LatticeShape& shape = {});

struct TwoSortedShape {
  unsigned max_group_quantifiers = 2;
  unsigned max_lattice_quantifiers = 2;
  unsigned max_atoms = 12;
  unsigned max_vars_per_sort = 3;
  std::vector<std::string> group_params{"a"};
  std::vector<std::string> lattice_params{"l"};
  bool allow_compl = true;
  /// Only atoms, &, | and exists.
  bool positive_existential = false;
};

/// A well-sorted formula whose free variables are among the parameters.
logic::Formula two_sorted_formula(Rng& rng, const TwoSortedShape& shape = {});

/// A purely existential sentence over the group sort with a quantifier-free matrix.
logic::Formula existential_group_sentence(Rng& rng, unsigned quantifiers, unsigned atoms);

/// Random L-term over the given variables.
logic::Term lattice_term(Rng& rng, const std::vector<std::string>& vars, unsigned size);

}  // namespace dvlg::gen
