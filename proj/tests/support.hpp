#pragma once

// Helpers shared by the engine tests and the acceptance run.

#include <cstddef>
#include <string>

#include "dvlg/error.hpp"
#include "dvlg/oracle.hpp"
#include "dvlg/random.hpp"
#include "dvlg/sw.hpp"
#include "dvlg/syntax.hpp"

namespace dvlg::testing {

inline oracle::Assignment random_assignment(Rng& rng, const logic::Formula& f, std::size_t n) {
  oracle::Assignment env;
  for (const auto& [v, sort] : logic::free_vars(f)) {
    if (sort == logic::Sort::G) env.group_env[v] = rng.vector(n);
    else env.lattice_env[v] = rng.subset(n);
  }
  return env;
}

inline oracle::Limits reduct_limits() {
  oracle::Limits l;
  l.max_quantifiers = 64;
  l.max_atoms = 256;
  return l;
}

struct Agreement {
  std::size_t checks = 0;
  std::size_t mismatches = 0;
  std::string first_mismatch;
};

/// Compares f and its assembled reduction in Stan(Q^n), n = 1..max_n, under
/// `assignments` random parameter choices per n.
inline Agreement reduct_agreement(const logic::Formula& f, const sw::ReductionOutput& r, Rng& rng,
                                  std::size_t max_n = 3, std::size_t assignments = 10) {
  Agreement out;
  const logic::Formula reduct = r.assemble();
  for (std::size_t n = 1; n <= max_n; ++n) {
    FinStdStructure s(n);
    for (std::size_t i = 0; i < assignments; ++i) {
      const oracle::Assignment env = random_assignment(rng, f, n);
      const bool lhs = oracle::decide_finite(s, f, env, reduct_limits());
      const bool rhs = oracle::decide_finite(s, reduct, env, reduct_limits());
      ++out.checks;
      if (lhs != rhs && out.mismatches++ == 0)
        out.first_mismatch = "n=" + std::to_string(n) + " assignment " + std::to_string(i);
    }
  }
  return out;
}

}  // namespace dvlg::testing
