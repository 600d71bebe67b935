#include <doctest.h>

#include "helpers.hpp"
#include "sedan/clause.hpp"
#include "sedan/eval.hpp"
#include "sedan/processes.hpp"
#include "sedan/simplify.hpp"
#include "sedan/waterfall.hpp"

using namespace sedan;

namespace {

const char* kRev = R"(
(include "base-rules.lisp")
(defun rev (x)
  (if (endp x) nil (append (rev (cdr x)) (list (car x)))))
)";

WaterfallConfig config(std::uint64_t seed, bool backtrack = true) {
  WaterfallConfig c;
  c.test.seed = seed;
  c.backtrack = backtrack;
  return c;
}

bool clause_holds(const Clause& c, const Binding& b, const World& w) {
  for (const auto& lit : c) {
    if (!evaluate(lit, b, w).is_nil()) return true;
  }
  return false;
}

/// No sampled parent binding satisfies every child yet falsifies the parent.
void check_log_soundness(const ProofResult& r, const World& w, std::size_t samples) {
  for (const auto& e : r.log) {
    if (!e.kept || e.children.empty()) continue;
    TestConfig tc;
    tc.seed = mix_seed(17, e.goal_id);
    tc.trials = samples;
    BindingSampler sampler(w, complete_alist(e.parent, e.parent_alist), tc);
    for (std::size_t i = 0; i < sampler.trial_count(); ++i) {
      const auto parent = sampler.next(i);
      if (!parent) continue;
      try {
        bool children_hold = true;
        for (std::size_t k = 0; k < e.children.size() && children_hold; ++k) {
          Binding child;
          for (const auto& [v, t] : e.forward_maps[k]) child[v] = evaluate(t, *parent, w);
          children_hold = clause_holds(e.children[k], child, w);
        }
        if (children_hold) {
          CHECK_MESSAGE(clause_holds(e.parent, *parent, w),
                        e.goal_id << " " << e.process << " "
                                  << binding_to_string(*parent, PrintStyle::kReport));
        }
      } catch (const Error&) {
      }
    }
  }
}

bool is_shape_a1a(const Value& v) {
  std::vector<Value> items;
  for (const Value* p = &v; p->is_pair(); p = &p->cdr()) items.push_back(p->car());
  if (!v.is_true_list() || items.size() != 3) return false;
  return items[0] == items[2] && items[1] == read_value("1") &&
         compare(items[0], read_value("256")) > 0;
}

}  // namespace

TEST_CASE("goal ids") {
  GoalId g;
  CHECK(g.str() == "Goal");
  CHECK(g.primed().str() == "Goal'");
  CHECK(g.primed().primed().primed().str() == "Goal'''");
  CHECK(g.primed().primed().primed().primed().str() == "Goal'4'");
  CHECK(g.subgoal(3).str() == "Subgoal 3");
  CHECK(g.subgoal(3).primed().subgoal(2).str() == "Subgoal 3.2");
  CHECK(g.subgoal(3).primed().primed().primed().primed().str() == "Subgoal 3'4'");
}

TEST_CASE("typed rev-rev fails without counterexamples") {
  const World w = test::load(kRev);
  const Term conj = parse_term("(implies (true-listp x) (equal (rev (rev x)) x))");
  const ProofResult r = run_waterfall(conj, w, {}, config(24));
  CHECK_FALSE(r.proved);
  CHECK_FALSE(r.falsified);
  REQUIRE_FALSE(r.checkpoints.empty());
  for (const auto& cp : r.checkpoints) {
    REQUIRE(cp.report.has_value());
    CHECK(cp.report->counterexample_count == 0);
  }
  const std::string text = render_proof(r, w);
  CHECK(text.find("Proof failed") != std::string::npos);
}

TEST_CASE("posp implies natp is proved by simplification") {
  const World w = test::load(R"((include "base-rules.lisp"))");
  const ProofResult r = run_waterfall(parse_term("(implies (posp n) (natp n))"), w, {}, config(1));
  CHECK(r.proved);
  CHECK(r.checkpoints.empty());
  CHECK(render_proof(r, w).find("Q.E.D.") != std::string::npos);
}

TEST_CASE("the triangle conjecture yields an (a 1 a) counterexample") {
  const World w = test::load(test::kTriangleDefs);
  const Term conj = parse_term(test::kTriangleThm);
  const ProofResult r = run_waterfall(conj, w, {}, config(24));
  CHECK_FALSE(r.proved);
  bool single_pos = false;
  for (const auto& cp : r.checkpoints) {
    if (to_string(cp.alist, w) == "((X1 . POS))") single_pos = true;
  }
  CHECK(single_pos);
  REQUIRE(r.falsified);
  bool shaped = false;
  for (const auto& ce : r.counterexamples) {
    CHECK(evaluate(conj, ce.binding, w).is_nil());
    shaped = shaped || is_shape_a1a(ce.binding.at("x"));
  }
  CHECK(shaped);
  const std::string text = render_proof(r, w);
  CHECK(text.find("The conjecture is false.") != std::string::npos);
  CHECK(text.find("type alist ((X1 . POS))") != std::string::npos);
}

TEST_CASE("verified counterexamples falsify the conjecture") {
  const World w = test::load(test::kTriangleDefs);
  const Term conj = parse_term(test::kTriangleThm);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const ProofResult r = run_waterfall(conj, w, {}, config(seed));
    for (const auto& cp : r.checkpoints) {
      for (const auto& lc : cp.lifted) {
        if (lc.status == LiftStatus::kVerified) {
          CHECK(evaluate(conj, lc.lift.binding, w).is_nil());
        }
        if (lc.status == LiftStatus::kSpurious) {
          CHECK_FALSE(evaluate(conj, lc.lift.binding, w).is_nil());
        }
      }
    }
  }
}

TEST_CASE("process order: generalize only fires on goals the earlier processes leave alone") {
  const World w = test::load(test::kTriangleDefs);
  const std::vector<Term> conjectures = {
      parse_term(test::kTriangleThm),
      parse_term("(<= 0 (+ (len x) (len x)))"),
      parse_term("(implies (consp x) (equal (len (cdr x)) (len (cdr x))))"),
  };
  for (const auto& conj : conjectures) {
    for (bool backtrack : {true, false}) {
      const ProofResult r = run_waterfall(conj, w, {}, config(3, backtrack));
      for (const auto& e : r.log) {
        if (e.process != "generalize") continue;
        CHECK(simplify_clause(e.parent, w).kind == SimplifyOutcome::Kind::kUnchanged);
        CHECK_FALSE(eliminate_destructors(e.parent, e.parent_alist, w).has_value());
      }
    }
  }
}

TEST_CASE("kept process applications are sound on sampled bindings") {
  const World w = test::load(test::kTriangleDefs);
  for (const char* text : {test::kTriangleThm.data(), "(<= 0 (+ (len x) (len x)))",
                           "(implies (and (natp a) (equal b (+ a 1))) (< a b))"}) {
    const ProofResult r = run_waterfall(parse_term(text), w, {}, config(9, false));
    check_log_soundness(r, w, 200);
  }
}

TEST_CASE("checkpoints are stable under another simplify pass") {
  const World w = test::load(test::kTriangleDefs);
  const ProofResult r = run_waterfall(parse_term(test::kTriangleThm), w, {}, config(24));
  for (const auto& cp : r.checkpoints) {
    CHECK(simplify_clause(cp.clause, w).kind == SimplifyOutcome::Kind::kUnchanged);
  }
}

TEST_CASE("backtracking discards a refuted generalization") {
  const World w = test::load(R"((include "base-rules.lisp"))");
  const Term conj = parse_term("(<= 0 (+ (len x) (len x)))");

  const ProofResult on = run_waterfall(conj, w, {}, config(24, true));
  std::size_t discarded = 0;
  for (const auto& e : on.log) {
    if (e.process == "generalize" && !e.kept) {
      ++discarded;
      CHECK(std::find(e.redo_do_not.begin(), e.redo_do_not.end(), "generalize") !=
            e.redo_do_not.end());
      CHECK(e.discard_reason.find("counterexample") != std::string::npos);
    }
  }
  CHECK(discarded >= 1);
  for (const auto& cp : on.checkpoints) {
    for (const auto& lc : cp.lifted) CHECK(lc.status != LiftStatus::kSubgoalLocal);
  }
  CHECK_FALSE(on.falsified);

  const ProofResult off = run_waterfall(conj, w, {}, config(24, false));
  bool local = false;
  for (const auto& cp : off.checkpoints) {
    for (const auto& lc : cp.lifted) {
      if (lc.status == LiftStatus::kSubgoalLocal) {
        local = true;
        CHECK_FALSE(lc.lift.ok);
      }
    }
  }
  CHECK(local);
  CHECK_FALSE(off.falsified);
}

TEST_CASE("a do-not hint prevents generalization") {
  const World w = test::load(R"((include "base-rules.lisp"))");
  UserHint h;
  h.goal_id = "Goal";
  h.settings.do_not = {"generalize"};
  const ProofResult r =
      run_waterfall(parse_term("(<= 0 (+ (len x) (len x)))"), w, {h}, config(24, true));
  for (const auto& e : r.log) CHECK(e.process != "generalize");
}

TEST_CASE("the goal budget pools the remaining goals") {
  const World w = test::load(test::kTriangleDefs);
  WaterfallConfig c = config(1);
  c.goal_budget = 2;
  const ProofResult r = run_waterfall(parse_term(test::kTriangleThm), w, {}, c);
  CHECK_FALSE(r.proved);
  bool budget = false;
  for (const auto& g : r.goals) budget = budget || g.status == GoalStatus::kBudget;
  CHECK(budget);
  CHECK_FALSE(r.diagnostics.empty());
}

TEST_CASE("proof attempts are deterministic") {
  const World w = test::load(test::kTriangleDefs);
  const Term conj = parse_term(test::kTriangleThm);
  CHECK(render_proof(run_waterfall(conj, w, {}, config(5)), w) ==
        render_proof(run_waterfall(conj, w, {}, config(5)), w));
}
