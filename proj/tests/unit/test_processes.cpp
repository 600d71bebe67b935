#include <doctest.h>

#include "helpers.hpp"
#include "sedan/clause.hpp"
#include "sedan/eval.hpp"
#include "sedan/processes.hpp"
#include "sedan/testgen.hpp"

using namespace sedan;

namespace {

Clause clause_of(const char* text) { return clausify(parse_term(text)).front(); }

std::string literals(const Clause& c) {
  std::string s;
  for (const auto& lit : c) s += (s.empty() ? "(" : " ") + to_string(lit);
  return s + ")";
}

}  // namespace

TEST_CASE("destructor elimination maps X to (cons X1 X2)") {
  const World w;
  const Clause c = clause_of("(implies (consp x) (equal (car x) (cdr x)))");
  const auto step = eliminate_destructors(c, {}, w);
  REQUIRE(step.has_value());
  CHECK(literals(step->child) == "((equal x1 x2))");
  REQUIRE(step->var_map.size() == 1);
  CHECK(step->var_map[0].var == "x");
  CHECK(*step->var_map[0].term == parse_term("(cons x1 x2)"));
  CHECK(step->forward_map.at("x1") == parse_term("(car x)"));
  CHECK(step->forward_map.at("x2") == parse_term("(cdr x)"));
  CHECK(step->liftable);
}

TEST_CASE("destructor elimination is inapplicable without a consp hypothesis") {
  const World w;
  CHECK_FALSE(eliminate_destructors(clause_of("(equal (car x) (cdr x))"), {}, w).has_value());
  CHECK_FALSE(
      eliminate_destructors(clause_of("(implies (consp x) (equal x y))"), {}, w).has_value());
}

TEST_CASE("destructor elimination propagates component types") {
  const World w = test::load("(defdata triple (list pos pos pos))");
  const Clause c = clause_of("(implies (and (triplep x) (consp x)) (< 0 (car x)))");
  TypeAlist alist;
  add_restriction(alist, "x", Restriction::of_type("triple"));
  const auto step = eliminate_destructors(c, alist, w);
  REQUIRE(step.has_value());
  const TypeAlistEntry* e = find_entry(step->type_map, "x1");
  REQUIRE(e != nullptr);
  CHECK(e->restrictions[0] == Restriction::of_type("pos"));
}

TEST_CASE("the child implies the parent under the forward map") {
  const World w;
  const Clause c = clause_of("(implies (and (consp x) (natp (car x))) (< (len (cdr x)) (len x)))");
  const auto step = eliminate_destructors(c, {}, w);
  REQUIRE(step.has_value());
  for (const char* v : {"(1 2)", "(a . b)", "(nil)", "((1) 2 3)"}) {
    const Binding parent{{"x", read_value(v)}};
    Binding child;
    for (const auto& [var, term] : step->forward_map) child[var] = evaluate(term, parent, w);
    bool parent_holds = false;
    for (const auto& lit : c) parent_holds |= !evaluate(lit, parent, w).is_nil();
    bool child_holds = false;
    for (const auto& lit : step->child) child_holds |= !evaluate(lit, child, w).is_nil();
    CHECK(parent_holds == child_holds);
  }
}

TEST_CASE("generalize replaces the repeated subterm") {
  const auto step = generalize_clause(clause_of("(<= 0 (+ (len x) (len x)))"));
  REQUIRE(step.has_value());
  CHECK(literals(step->child) == "((not (< (+ n n) 0)))");
  CHECK_FALSE(step->liftable);
  CHECK(step->forward_map.at("n") == parse_term("(len x)"));
  REQUIRE(step->var_map.size() == 1);
  CHECK_FALSE(step->var_map[0].term.has_value());
}

TEST_CASE("generalize picks the largest subterm and avoids used names") {
  const auto step =
      generalize_clause(clause_of("(implies (natp (len (rev n))) (equal (len (rev n)) (rev n)))"));
  REQUIRE(step.has_value());
  CHECK(step->forward_map.at("m") == parse_term("(len (rev n))"));
  CHECK_FALSE(generalize_clause(clause_of("(equal (len x) (rev y))")).has_value());
}

TEST_CASE("a generalized child can be falsifiable") {
  const World w;
  const auto step = generalize_clause(clause_of("(not (< (+ (len x) (len x)) 0))"));
  REQUIRE(step.has_value());
  TestConfig config;
  config.seed = 3;
  const TestReport r = run_trials(step->child, complete_alist(step->child, {}), config, w);
  REQUIRE(r.counterexample_count > 0);
  for (const auto& b : r.counterexamples) {
    CHECK(b.at("n").is_rational());
    CHECK(evaluate(clause_to_term(step->child), b, w).is_nil());
  }
}

TEST_CASE("fresh indexed names") {
  CHECK(fresh_indexed_names("x", {"x", "x1"}, 2) == std::vector<std::string>{"x2", "x3"});
  CHECK(fresh_indexed_names("x2", {"x2"}, 2) == std::vector<std::string>{"x1", "x3"});
}
