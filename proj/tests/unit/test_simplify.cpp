#include <doctest.h>

#include "helpers.hpp"
#include "sedan/clause.hpp"
#include "sedan/eval.hpp"
#include "sedan/simplify.hpp"

using namespace sedan;

namespace {

Clause clause_of(const char* text) { return clausify(parse_term(text)).front(); }

SimplifyOutcome simplify(const char* text, const World& w) {
  return simplify_clause(clause_of(text), w);
}

}  // namespace

TEST_CASE("complementary literals prove the clause") {
  const World w;
  const Clause c{parse_term("(p x)"), parse_term("(not (p x))")};
  CHECK_FALSE(clean_literals(c).has_value());
  const World wp = test::load("(defun p (x) (consp x))");
  CHECK(simplify_clause(c, wp).kind == SimplifyOutcome::Kind::kProved);
}

TEST_CASE("literal cleanup") {
  const auto cleaned = clean_literals({parse_term("a"), parse_term("nil"), parse_term("a")});
  REQUIRE(cleaned.has_value());
  CHECK(cleaned->size() == 1);
  CHECK_FALSE(clean_literals({parse_term("a"), parse_term("t")}).has_value());
}

TEST_CASE("an equality hypothesis is substituted and the rest evaluates") {
  const World w;
  const SimplifyOutcome o = simplify("(implies (equal x 42) (natp x))", w);
  CHECK(o.kind == SimplifyOutcome::Kind::kProved);
}

TEST_CASE("equality substitution records the variable map") {
  const World w = test::load(R"((defun f (x) (consp x)))");
  const SimplifyOutcome o = simplify("(implies (and (equal x (cons y z)) (f y)) (f x))", w);
  REQUIRE(o.kind == SimplifyOutcome::Kind::kChildren);
  REQUIRE(o.children.size() == 1);
  bool mapped = false;
  for (const auto& m : o.var_maps[0]) {
    if (m.var == "x") {
      REQUIRE(m.term.has_value());
      CHECK(*m.term == parse_term("(cons y z)"));
      mapped = true;
    }
  }
  CHECK(mapped);
  for (const auto& lit : o.children[0]) CHECK_FALSE(occurs_var(lit, "x"));
}

TEST_CASE("a variable that disappears maps to the don't-care marker") {
  const World w = test::load("(defun f (y) (consp y))");
  const SimplifyOutcome o = simplify("(implies (and (equal x x) (f y)) (f (cons y y)))", w);
  if (o.kind == SimplifyOutcome::Kind::kChildren) {
    for (const auto& m : o.var_maps[0]) {
      if (m.var == "x") CHECK_FALSE(m.term.has_value());
    }
  } else {
    CHECK(o.kind == SimplifyOutcome::Kind::kProved);
  }
}

TEST_CASE("cancel rule rewrites under positive hypotheses") {
  const World w = test::load(test::kTriangleDefs);
  Rewriter rw(w);
  RewriteContext ctx;
  ctx.assume(parse_term("(rationalp a)"), true);
  ctx.assume(parse_term("(< 0 a)"), true);
  CHECK(rw.rewrite(parse_term("(equal a (* a b))"), ctx, true) == parse_term("(equal b 1)"));
  CHECK(rw.rewrite(parse_term("(equal a (* b a))"), ctx, true) == parse_term("(equal b 1)"));

  RewriteContext none;
  CHECK(rw.rewrite(parse_term("(equal a (* a b))"), none, true) != parse_term("(equal b 1)"));
}

TEST_CASE("the triangle case first = third becomes a single-variable goal") {
  const World w = test::load(test::kTriangleDefs);
  const Clause c = clause_of(
      "(implies (and (posp a) (posp b) (< 256 a) (equal a (* b a))) (not (equal b 1)))");
  const SimplifyOutcome o = simplify_clause(c, w);
  REQUIRE(o.kind == SimplifyOutcome::Kind::kChildren);
  REQUIRE(o.children.size() == 1);
  CHECK(clause_vars(o.children[0]) == std::vector<std::string>{"a"});
}

TEST_CASE("proved clauses hold on sampled bindings") {
  const World w = test::load(test::kTriangleDefs);
  const std::vector<const char*> formulas = {
      "(implies (and (natp a) (equal b (+ a 1))) (< a b))",
      "(implies (posp x) (natp x))",
      "(implies (and (consp x) (true-listp x)) (true-listp (cdr x)))",
      "(implies (trianglep x) (< 0 (first x)))",
      "(if (natp a) (< a (+ a 1)) (equal a a))",
  };
  const std::vector<Value> pool = {read_value("0"),    read_value("1"),   read_value("-3"),
                                   read_value("1/2"),  read_value("nil"), read_value("(1 2)"),
                                   read_value("(3 4 5)"), read_value("\"s\"")};
  for (const char* text : formulas) {
    for (const auto& parent : clausify(parse_term(text))) {
      const SimplifyOutcome o = simplify_clause(parent, w);
      for (const auto& a : pool) {
        for (const auto& b : pool) {
          for (const auto& x : pool) {
            const Binding bind{{"a", a}, {"b", b}, {"x", x}};
            bool parent_holds = false;
            for (const auto& lit : parent) parent_holds |= !evaluate(lit, bind, w).is_nil();
            if (o.kind == SimplifyOutcome::Kind::kProved) {
              CHECK_MESSAGE(parent_holds, text);
            }
          }
        }
      }
    }
  }
}

TEST_CASE("an exhausted rewrite budget leaves the clause unchanged") {
  World w = test::load("(defun f (x) (if (consp x) (f (cdr x)) t))\n"
                       "(defrule loop (equal (f x) (f (cons x x))) :trust t)");
  w.settings.max_rewrite_steps = 50;
  const SimplifyOutcome o = simplify("(f y)", w);
  CHECK(o.kind == SimplifyOutcome::Kind::kUnchanged);
  CHECK_FALSE(o.diagnostic.empty());
}
