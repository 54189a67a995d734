#pragma once

// Surface syntax (ASCII):
//
//   formula  := ('forall' | 'exists') v:S (',' v:S)* '.' formula
//             | formula '->' formula | formula '<->' formula
//             | formula '|' formula | formula '&' formula | '~' formula
//             | term ('<=' | '<<' | '=' | '<') term | 'true' | 'false' | '(' formula ')'
//   term     := term ('+' | '-') term | term ('meet' | 'join' | 'cap' | 'cup') term
//             | q '*' term | '-' term | '0' | 'bot' | 'top' | v        (q is n or n/m)
//             | 'P' '(' term ')' | 'compl' '(' term ')' | '(' term ')'
//
// Binding strength, tightest first: unary, scaling, meet/join/cap/cup, +/-,
// relations, ~, &, |, ->, quantifiers. `<` is sugar for `<= & ~ =` on G and
// `<< & ~ =` on L; `<->` is sugar for a conjunction of two implications.

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "dvlg/syntax.hpp"

namespace dvlg::logic {

using SortContext = std::map<std::string, Sort>;

/// Parses one formula. Free variables take their sort from `context`, or are
/// inferred from use. Throws Error(SyntaxError | SortError).
Formula parse(std::string_view text, const SortContext& context = {});
Term parse_term(std::string_view text, const SortContext& context = {});
/// Formulas separated by ';' or by blank-free line breaks; '#' starts a comment line.
std::vector<Formula> parse_many(std::string_view text, const SortContext& context = {});

std::string print(const Term& t);
std::string print(const Formula& f);

/// Checks that every variable is used at a single sort agreeing with `context`.
void sort_check(const Formula& f, const SortContext& context = {});

}  // namespace dvlg::logic
