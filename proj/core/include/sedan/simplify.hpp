#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sedan/clause.hpp"
#include "sedan/history.hpp"
#include "sedan/term.hpp"
#include "sedan/world.hpp"

namespace sedan {

/// Facts assumed while rewriting a term.
struct RewriteContext {
  std::vector<Term> known_true;   // non-nil
  std::vector<Term> known_false;  // nil

  /// Records `t` as true (or false); (not a) flips into a.
  void assume(const Term& t, bool value);
};

/// Conditional rewriter over a fixed world. Ground subterms are evaluated,
/// non-recursive definitions are opened and enabled rules fire after their
/// hypotheses rewrite to t.
class Rewriter {
 public:
  explicit Rewriter(const World& world);

  /// `iff`: only the truth value of the result matters.
  Term rewrite(const Term& t, const RewriteContext& ctx, bool iff);

  /// Set once the step budget ran out; results are then partial.
  bool exhausted() const { return exhausted_; }
  std::size_t steps() const { return steps_; }

 private:
  Term rw(const Term& t, RewriteContext& ctx, bool iff, std::size_t depth);
  Term rw_app(const Term& t, RewriteContext& ctx, bool iff, std::size_t depth);
  std::optional<Term> apply_rules(const Term& t, RewriteContext& ctx, bool iff,
                                  std::size_t depth);
  bool tick();

  const World& world_;
  std::size_t steps_ = 0;
  bool exhausted_ = false;
};

/// One-way matching of `pattern` against `term`, extending `subst`.
bool match_term(const Term& pattern, const Term& term, Substitution& subst);

struct SimplifyOutcome {
  enum class Kind { kUnchanged, kProved, kChildren };
  Kind kind = Kind::kUnchanged;
  std::vector<Clause> children;
  /// Per child: parent variable -> term over child variables, or ?.
  std::vector<std::vector<VarMapping>> var_maps;
  /// Substitutions done, e.g. "x5 := (* x3 x1)".
  std::vector<std::string> notes;
  std::string diagnostic;
};

/// One simplification pass: rewrite each literal assuming the others false,
/// literal cleanup, equality substitution, then re-clausification.
SimplifyOutcome simplify_clause(const Clause& clause, const World& world);

/// Duplicate removal, constant literals, complementary pairs. Returns
/// nullopt when the clause is trivially true.
std::optional<Clause> clean_literals(const Clause& clause);

}  // namespace sedan
