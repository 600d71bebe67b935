#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "sedan/config.hpp"
#include "sedan/subtype_graph.hpp"
#include "sedan/term.hpp"
#include "sedan/type_expr.hpp"

namespace sedan {

struct FunctionDef {
  std::string name;
  std::vector<std::string> formals;
  Term body;
  /// Calls itself (directly). Recursive definitions are never unfolded by
  /// the simplifier, only evaluated on ground arguments.
  bool recursive = false;
};

/// Conditional rewrite rule: under `hyps`, `lhs` may be replaced by `rhs`.
struct RewriteRule {
  std::string name;
  std::vector<Term> hyps;
  Term lhs;
  Term rhs;
  bool enabled = true;
  /// Only valid where just the truth value of `lhs` matters (the rule was
  /// stated as a bare predicate whose function is not known to be boolean).
  bool iff = false;
};

struct WorldSettings {
  std::size_t max_eval_depth = 10000;
  /// Samples checked before admitting a defdata-subtype edge.
  std::size_t edge_evidence = 1000;
  std::size_t max_rewrite_depth = 8;
  std::size_t max_rewrite_steps = 10000;
};

/// The logical database: functions, rewrite rules, registered types, the
/// subtype graph and settings. A World is a value; every admission returns
/// a new World and leaves the old one untouched.
class World {
 public:
  /// A world holding only the base types and their subtype edges.
  World();

  const FunctionDef* function(std::string_view name) const;
  const std::vector<std::shared_ptr<const RewriteRule>>& rules() const { return rules_; }
  const RewriteRule* rule(std::string_view name) const;
  const TypeTable& types() const { return types_; }
  const SubtypeGraph& subtypes() const { return subtypes_; }

  /// Arity of any callable symbol (builtin, defun, type recognizer or
  /// enumerator), -2 for builtins taking a range, or -1 when unknown.
  long arity(std::string_view fn) const;
  /// Symbol is a builtin, a defun or a type function.
  bool is_known_function(std::string_view fn) const { return arity(fn) != -1; }
  /// Function always returns t or nil (builtin predicates and recognizers).
  bool is_boolean_function(std::string_view fn) const;
  bool name_in_use(std::string_view name) const;

  WorldSettings settings;
  TestConfig test_defaults;

  // Raw mutators used by the admission functions below; they do not
  // validate.
  World with_function(FunctionDef def) const;
  World with_rule(RewriteRule rule) const;
  World with_type(TypeEntryPtr entry) const;
  World with_subtype_edge(const std::string& from, const std::string& to) const;

 private:
  std::map<std::string, std::shared_ptr<const FunctionDef>, std::less<>> functions_;
  std::vector<std::shared_ptr<const RewriteRule>> rules_;
  TypeTable types_;
  SubtypeGraph subtypes_;
};

/// Admits a user function. Rejects redefinition, unbound variables and
/// unknown or wrongly-applied functions in the body. No termination proof
/// is attempted; the evaluator's depth cap guards runaway recursion.
World define_function(const World& world, const std::string& name,
                      const std::vector<std::string>& formals, const Term& body);

/// Admits a rewrite rule from a formula of the shape
///   (implies hyps (equal lhs rhs)) | (equal lhs rhs) | (implies hyps p)
/// where a non-equality conclusion p becomes p -> t, and (not p) becomes
/// p -> nil.
World define_rule(const World& world, const std::string& name, const Term& formula,
                  bool enabled = true);

/// Checks every function symbol in `t` is known with the right arity and
/// every variable is in `bound` (when `bound` is non-null).
void check_term(const World& world, const Term& t, const std::vector<std::string>* bound,
                std::string_view self = {}, std::size_t self_arity = 0);

}  // namespace sedan
