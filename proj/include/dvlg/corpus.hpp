#pragma once

// Known-answer corpora stored as JSON lines:
// {"formula": ..., "expected_ec": bool, "expected_finite": {"n": bool}, "mode": "tplus" | "ec"}

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dvlg/oracle.hpp"
#include "dvlg/sw.hpp"

namespace dvlg::corpus {

struct Entry {
  std::string formula;
  std::optional<bool> expected_ec;
  std::map<std::size_t, bool> expected_finite;
  sw::Mode mode = sw::Mode::EC;
};

/// Blank lines are skipped. Throws Error(PreconditionViolated) naming the line.
std::vector<Entry> load(std::istream& in);
std::vector<Entry> load_file(const std::string& path);

struct Outcome {
  bool pass = true;
  std::optional<bool> ec;
  std::map<std::size_t, bool> finite;
  std::string detail;  // first disagreement or error
};

/// Decides the entry with reduce(mode) then the Boolean-algebra decider, and
/// with the finite oracle for each annotated n.
Outcome check(const Entry& e, const oracle::Limits& limits = {});

}  // namespace dvlg::corpus
