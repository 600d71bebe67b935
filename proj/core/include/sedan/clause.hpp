#pragma once

#include <string>
#include <vector>

#include "sedan/term.hpp"

namespace sedan {

/// A disjunction of literals. Hypotheses appear negated; the last literal
/// is the conclusion.
using Clause = std::vector<Term>;

/// (not a) -> a, anything else -> (not x).
Term negate(const Term& t);

/// Splits a formula into clauses whose conjunction is equivalent to it:
/// implies/or flatten into literals, and/not-or/not-implies split, ifs at
/// or below a literal lift into case splits.
std::vector<Clause> clausify(const Term& formula);

/// Expands each literal of an already-clausal literal list.
std::vector<Clause> clausify_literals(const Clause& literals);

/// Hypotheses of the clause as positive terms (each non-last literal
/// negated).
std::vector<Term> clause_hypotheses(const Clause& c);
/// Last literal, or nil for the empty clause.
Term clause_conclusion(const Clause& c);

/// (implies (and h1 ... hn) c), or just c without hypotheses.
Term clause_to_term(const Clause& c);

std::vector<std::string> clause_vars(const Clause& c);

std::string to_string(const Clause& c, PrintStyle style = PrintStyle::kCanonical);

}  // namespace sedan
