#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sedan/clause.hpp"
#include "sedan/history.hpp"
#include "sedan/testgen.hpp"
#include "sedan/world.hpp"

namespace sedan {

/// Result of destructor elimination or generalization: exactly one child.
struct ProcessStep {
  Clause child;
  std::vector<VarMapping> var_map;
  /// Child variable -> term over parent variables.
  std::map<std::string, Term> forward_map;
  /// Restrictions for freshly introduced variables.
  TypeAlist type_map;
  bool liftable = true;
  std::string note;
};

/// Fresh `root`+index names: smallest unused indices, skipping `avoid`.
std::vector<std::string> fresh_indexed_names(const std::string& base,
                                             const std::vector<std::string>& used,
                                             std::size_t count);

/// Replaces (car v) and (cdr v) by fresh variables for the first v with a
/// (consp v) hypothesis whose car or cdr occurs in the clause. `alist` is
/// the goal's accumulated type alist, used for component restrictions.
std::optional<ProcessStep> eliminate_destructors(const Clause& clause, const TypeAlist& alist,
                                                 const World& world);

/// Replaces the largest repeated non-variable, non-constant subterm (the
/// leftmost among equals) by a fresh variable.
std::optional<ProcessStep> generalize_clause(const Clause& clause);

}  // namespace sedan
