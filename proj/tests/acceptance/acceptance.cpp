// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sedan/clause.hpp"
#include "sedan/datadef.hpp"
#include "sedan/error.hpp"
#include "sedan/eval.hpp"
#include "sedan/session.hpp"
#include "sedan/testgen.hpp"
#include "sedan/waterfall.hpp"

using namespace sedan;

namespace {

constexpr std::size_t kSweep = 20;
constexpr std::uint64_t kSweepBase = 1000;
constexpr double kRevSecondsPerSeed = 1.0;
constexpr std::size_t kRevPassSeeds = 19;
constexpr std::size_t kTriangleNaiveTrials = 10000;
constexpr unsigned kTriangleUniformBits = 10;
constexpr std::size_t kTriangleMaxSatisfied = 5;
constexpr std::size_t kTrianglePassSeeds = 19;
constexpr std::size_t kInequalityTrials = 10000;
constexpr std::size_t kInequalityPassSeeds = 15;
constexpr std::uint64_t kEnumeratorLimit = 5000;
constexpr std::size_t kFinitePrefixFactor = 10;
constexpr std::size_t kSampleStream = 1000;
constexpr std::size_t kSoundnessSamples = 200;

const std::vector<std::string> kCorpus = {"base-rules.lisp", "rev.lisp",
                                          "triangle.lisp",   "inequality.lisp",
                                          "gen-backtrack.lisp", "types.lisp"};

std::string corpus(const std::string& name) { return std::string(SEDAN_CORPUS_DIR) + "/" + name; }

std::uint64_t sweep_seed(std::size_t i) { return mix_seed(kSweepBase, i); }

World load_file(const std::string& name) {
  const SessionOutcome o = process_file(corpus(name), {});
  if (o.error) throw Error("loading " + name + ": " + *o.error);
  return o.world;
}

World load_text(std::string_view text) {
  const SessionOutcome o = process_text(text, {}, SEDAN_CORPUS_DIR);
  if (o.error) throw Error(*o.error);
  return o.world;
}

bool falsifies(const Term& conjecture, const Binding& b, const World& w) {
  try {
    return evaluate(conjecture, b, w).is_nil();
  } catch (const Error&) {
    return false;
  }
}

bool clause_holds(const Clause& c, const Binding& b, const World& w) {
  for (const auto& lit : c) {
    if (!evaluate(lit, b, w).is_nil()) return true;
  }
  return false;
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

const char* kRevDef =
    "(defun rev (x) (if (endp x) nil (append (rev (cdr x)) (list (car x)))))";

Outcome criterion1() {
  Outcome o;
  const World w = load_text(kRevDef);
  const Term conj = parse_term("(equal (rev (rev x)) x)");
  std::size_t found = 0;
  double worst = 0;
  for (std::size_t i = 0; i < kSweep; ++i) {
    TestConfig cfg;
    cfg.trials = 100;
    cfg.dist = Distribution::kGeometric;
    cfg.seed = sweep_seed(i);
    const auto start = std::chrono::steady_clock::now();
    const TestReport r = top_level_test(conj, cfg, w);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    worst = std::max(worst, secs);
    if (r.counterexample_count > 0) ++found;
    for (const auto& b : r.counterexamples) {
      o.require(evaluate(conj, b, w).is_nil(),
                "counterexample " + binding_to_string(b, PrintStyle::kReport) + " re-evaluates");
    }
  }
  o.require(found >= kRevPassSeeds, "found in " + std::to_string(found) + "/20 seeds");
  o.require(worst < kRevSecondsPerSeed, "slowest seed " + std::to_string(worst) + " s");
  if (o.pass) {
    o.detail = "counterexamples in " + std::to_string(found) + "/20 seeds, slowest " +
               std::to_string(worst) + " s";
  }
  return o;
}

Outcome criterion2() {
  Outcome o;
  const World w = load_text(kRevDef);
  TestConfig cfg;
  cfg.trials = 100;
  const TestReport r =
      top_level_test(parse_term("(implies (true-listp x) (equal (rev (rev x)) x))"), cfg, w);
  const std::string text = render_report(r, w);
  o.require(r.satisfied == 100, "satisfied " + std::to_string(r.satisfied));
  o.require(r.counterexample_count == 0, "counterexamples found");
  o.require(!r.witnesses.empty() && text.find("Cases in which the conjecture is true include:") !=
                                        std::string::npos,
            "no witness displayed");
  const std::string sentence = "We tried 100 random trials, " + std::to_string(r.satisfied) +
                               " (" + std::to_string(r.unique_satisfied) +
                               " unique) of which satisfied the hypotheses.";
  o.require(text.find(sentence) != std::string::npos, "trial sentence missing");
  const std::string split = "none were counterexamples and " +
                            std::to_string(r.witness_count) + " were witnesses.";
  o.require(text.find(split) != std::string::npos, "witness sentence missing");
  if (o.pass) o.detail = sentence;
  return o;
}

Outcome criterion3() {
  Outcome o;
  const World w = load_file("triangle.lisp");
  const Term conj = parse_term(R"(
(implies (and (triplep x) (trianglep x) (> (third x) 256)
              (= (third x) (* (second x) (first x))))
         (not (equal "isosceles" (shape x)))))");
  std::size_t good = 0;
  std::size_t most = 0;
  for (std::size_t i = 0; i < kSweep; ++i) {
    TestConfig cfg;
    cfg.trials = kTriangleNaiveTrials;
    cfg.dist = Distribution::kUniform;
    cfg.uniform_bits = kTriangleUniformBits;
    cfg.seed = sweep_seed(i);
    const TestReport r = top_level_test(conj, cfg, w);
    most = std::max(most, r.satisfied);
    if (r.satisfied <= kTriangleMaxSatisfied && r.counterexample_count == 0) ++good;
  }
  o.require(good >= kTrianglePassSeeds, "only " + std::to_string(good) + "/20 seeds qualify");
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(good) +
              "/20 seeds with <= 5 satisfying and no counterexample (max satisfied " +
              std::to_string(most) + ")";
  return o;
}

bool shape_a1a(const Value& v) {
  std::vector<Value> items;
  for (const Value* p = &v; p->is_pair(); p = &p->cdr()) items.push_back(p->car());
  return v.is_true_list() && items.size() == 3 && items[0] == items[2] &&
         items[1] == Value::integer(1) && compare(items[0], Value::integer(256)) > 0;
}

Outcome criterion4() {
  Outcome o;
  const World w = load_file("triangle.lisp");
  const Term conj = parse_term(R"(
(implies (and (trianglep x) (> (third x) 256) (= (third x) (* (second x) (first x))))
         (not (equal "isosceles" (shape x)))))");
  std::size_t good = 0;
  std::string example;
  for (std::size_t i = 0; i < kSweep; ++i) {
    WaterfallConfig cfg;
    cfg.test = w.test_defaults;
    cfg.test.seed = sweep_seed(i);
    const ProofResult r = run_waterfall(conj, w, {}, cfg);
    bool single_pos = false;
    for (const auto& cp : r.checkpoints) {
      if (cp.alist.size() == 1 && cp.alist[0].restrictions.size() == 1 &&
          cp.alist[0].restrictions[0] == Restriction::of_type("pos")) {
        single_pos = true;
      }
    }
    bool shaped = false;
    for (const auto& ce : r.counterexamples) {
      o.require(falsifies(conj, ce.binding, w), "lifted binding does not re-falsify");
      if (shape_a1a(ce.binding.at("x"))) {
        shaped = true;
        if (example.empty()) example = lifted_to_string(ce, {"x"});
      }
    }
    if (single_pos && shaped) ++good;
  }
  o.require(good >= kTrianglePassSeeds, "only " + std::to_string(good) + "/20 seeds qualify");
  if (o.pass) {
    o.detail = std::to_string(good) + "/20 seeds reach ((X1 . POS)) and lift e.g. " + example;
  }
  return o;
}

Outcome criterion5() {
  Outcome o;
  const World w;
  const char* hyps[] = {"(rationalp a)", "(rationalp b)", "(rationalp c)", "(< 0 a)",
                        "(< 0 b)",       "(< 0 c)",       "(<= (expt a 2) (* b (+ c 1)))",
                        "(<= b (* 4 c))"};
  const Binding known{{"a", read_value("1/7")}, {"b", read_value("2/11")}, {"c", read_value("2/9")}};
  for (const char* h : hyps) {
    o.require(evaluate(parse_term(h), known, w).is_t(), std::string("hypothesis ") + h);
  }
  const Term concl = parse_term("(< (expt (- a 1) 2) (* b c))");
  o.require(evaluate(concl, known, w).is_nil(), "conclusion holds on (1/7 2/11 2/9)");

  const Term conj = parse_term(R"(
(implies (and (real/rationalp a) (real/rationalp b) (real/rationalp c)
              (< 0 a) (< 0 b) (< 0 c)
              (<= (expt a 2) (* b (+ c 1))) (<= b (* 4 c)))
         (< (expt (- a 1) 2) (* b c))))");
  std::size_t found = 0;
  for (std::size_t i = 0; i < kSweep; ++i) {
    TestConfig cfg;
    cfg.trials = kInequalityTrials;
    cfg.dist = Distribution::kGeometric;
    cfg.seed = sweep_seed(i);
    const TestReport r = top_level_test(conj, cfg, w);
    if (r.counterexample_count > 0) ++found;
    for (const auto& b : r.counterexamples) {
      o.require(evaluate(conj, b, w).is_nil(), "counterexample does not re-evaluate");
    }
  }
  o.require(found >= kInequalityPassSeeds, "found in " + std::to_string(found) + "/20 seeds");

  const Term weakened = parse_term(R"(
(implies (and (real/rationalp a) (real/rationalp b) (real/rationalp c)
              (<= 3/4 a)
              (<= (expt a 2) (* b (+ c 1))) (<= b (* 4 c)))
         (< (expt (- a 1) 2) (* b c))))");
  const Binding boundary{
      {"a", read_value("3/4")}, {"b", read_value("1/2")}, {"c", read_value("1/8")}};
  o.require(evaluate(weakened, boundary, w).is_nil(), "boundary binding does not falsify");
  if (o.pass) {
    o.detail = "exact bindings check; counterexamples in " + std::to_string(found) + "/20 seeds";
  }
  return o;
}

Outcome criterion6() {
  Outcome o;
  SessionFlags on;
  on.backtrack = true;
  SessionFlags off;
  off.backtrack = false;
  const SessionOutcome so_on = process_file(corpus("gen-backtrack.lisp"), on);
  const SessionOutcome so_off = process_file(corpus("gen-backtrack.lisp"), off);
  o.require(!so_on.error && !so_off.error, "corpus failed to load");
  const FormOutcome* f_on = nullptr;
  const FormOutcome* f_off = nullptr;
  for (const auto& f : so_on.forms) {
    if (f.kind == Form::Kind::kThm && !f_on) f_on = &f;
  }
  for (const auto& f : so_off.forms) {
    if (f.kind == Form::Kind::kThm && !f_off) f_off = &f;
  }
  if (!f_on || !f_off || !f_on->proof || !f_off->proof) {
    o.require(false, "no thm in gen-backtrack.lisp");
    return o;
  }
  const ProofResult& p_on = *f_on->proof;
  std::size_t discarded = 0;
  for (const auto& e : p_on.log) {
    if (e.process == "generalize" && !e.kept) ++discarded;
  }
  o.require(discarded >= 1, "no discarded generalization");
  bool reentered = false;
  for (const auto& g : p_on.goals) {
    if (g.redos > 0 && g.settings.do_not.count("generalize")) reentered = true;
  }
  o.require(reentered, "goal did not re-enter with do-not generalize");
  for (const auto& cp : p_on.checkpoints) {
    for (const auto& lc : cp.lifted) {
      o.require(lc.status != LiftStatus::kSubgoalLocal, "subgoal-local counterexample with backtrack on");
    }
  }
  o.require(p_on.counterexamples.empty(), "top-level counterexample reported with backtrack on");

  const ProofResult& p_off = *f_off->proof;
  bool local = false;
  for (const auto& cp : p_off.checkpoints) {
    const HistoryNode* node = p_off.history.find(cp.goal_id);
    for (const auto& lc : cp.lifted) {
      if (lc.status == LiftStatus::kSubgoalLocal && !lc.lift.ok && node &&
          node->process == "generalize" && !clause_holds(cp.clause, lc.local, load_file("base-rules.lisp"))) {
        local = true;
      }
    }
  }
  o.require(local, "no lift failure from the generalized child with backtrack off");
  o.require(p_off.counterexamples.empty(), "local counterexample reported as top-level");
  if (o.pass) {
    o.detail = std::to_string(discarded) + " discarded generalization(s) with backtracking; " +
               "lift failure without";
  }
  return o;
}

Outcome criterion7() {
  Outcome o;
  std::vector<World> worlds = {World{}, load_file("types.lisp"), load_file("triangle.lisp")};
  std::size_t checked = 0;
  for (const auto& w : worlds) {
    for (const auto& [name, entry] : w.types().entries()) {
      ++checked;
      for (std::uint64_t n = 0; n <= kEnumeratorLimit; ++n) {
        const Value v = enumerate(w, name, n);
        if (!recognize(w, name, v)) {
          o.require(false, name + " index " + std::to_string(n));
          break;
        }
      }
      if (entry->finite) {
        std::set<std::string> seen;
        for (std::uint64_t n = 0; n < kFinitePrefixFactor * entry->extent.size(); ++n) {
          seen.insert(to_string(enumerate(w, name, n)));
        }
        for (const auto& v : entry->extent) {
          o.require(seen.count(to_string(v)) == 1, name + " misses " + to_string(v));
        }
      }
      for (Distribution d : {Distribution::kGeometric, Distribution::kUniform}) {
        Rng a(77), b(77);
        std::string sa, sb;
        for (std::size_t i = 0; i < kSampleStream; ++i) {
          sa += to_string(sample(w, name, a, d)) + "\n";
          sb += to_string(sample(w, name, b, d)) + "\n";
        }
        o.require(sa == sb, name + " sample stream differs");
      }
    }
  }
  if (o.pass) o.detail = std::to_string(checked) + " type entries checked";
  return o;
}

Outcome criterion8() {
  Outcome o;
  const World base;
  o.require(base.subtypes().reaches("pos", "nat") && base.subtypes().reaches("nat", "integer") &&
                base.subtypes().reaches("integer", "rational"),
            "base chain missing");
  const TypeSelection sel = minimal_type(
      base, std::vector<Restriction>{Restriction::of_type("nat"), Restriction::of_type("integer")});
  o.require(sel.primary == Restriction::of_type("nat") && sel.residual.empty(),
            "minimal-type({nat, integer}) = " + to_string(sel.primary));

  const World tw =
      load_text("(defdata triple (list pos pos pos)) (defdata-subtype triple proper-cons)");
  o.require(tw.subtypes().has_edge("triple", "proper-cons"), "triple edge missing");

  const char* cycle = "(defdata n1 nat) (defdata n2 n1) (defdata-subtype n1 n2)";
  const World c1 = load_text(cycle);
  const World c2 = load_text(cycle);
  o.require(c1.subtypes().equivalent("n1", "n2"), "2-cycle not collapsed");
  o.require(c1.subtypes().component_of("n1") == c1.subtypes().component_of("n2"),
            "2-cycle components differ");
  o.require(c1.subtypes().representative("n2") == c2.subtypes().representative("n2"),
            "representative not deterministic");

  bool rejected = false;
  std::string witness;
  try {
    add_subtype_edge(base, "integer", "nat");
  } catch (const AdmissionError& e) {
    rejected = true;
    witness = e.what();
  }
  const SubtypeEvidence ev = check_subtype_evidence(base, "integer", "nat", 1000);
  o.require(rejected && !ev.ok, "integer -> nat admitted");
  o.require(!ev.ok && recognize(base, "integer", ev.witness) && !recognize(base, "nat", ev.witness),
            "witness is not a concrete counterexample");
  if (o.pass) {
    o.detail = "representative " + c1.subtypes().representative("n2") + ", witness " +
               to_string(ev.witness);
  }
  return o;
}

std::string random_formula(std::mt19937& gen, int depth) {
  static const char* atoms[] = {"p", "q", "r", "t", "nil"};
  if (depth == 0 || gen() % 4 == 0) return atoms[gen() % 5];
  const auto sub = [&] { return random_formula(gen, depth - 1); };
  switch (gen() % 6) {
    case 0:
      return "(not " + sub() + ")";
    case 1:
      return "(and " + sub() + " " + sub() + ")";
    case 2:
      return "(or " + sub() + " " + sub() + ")";
    case 3:
      return "(implies " + sub() + " " + sub() + ")";
    case 4:
      return "(if " + sub() + " " + sub() + " " + sub() + ")";
    default:
      return "(equal " + sub() + " " + sub() + ")";
  }
}

Outcome criterion9() {
  Outcome o;
  std::size_t applications = 0;
  std::size_t bindings = 0;
  for (const auto& name : kCorpus) {
    const SessionOutcome so = process_file(corpus(name), {});
    for (const auto& f : so.forms) {
      if (!f.proof) continue;
      for (const auto& e : f.proof->log) {
        if (!e.kept || e.children.empty()) continue;
        ++applications;
        TestConfig tc;
        tc.seed = mix_seed(9, name + ":" + e.goal_id);
        tc.trials = kSoundnessSamples;
        BindingSampler sampler(so.world, complete_alist(e.parent, e.parent_alist), tc);
        for (std::size_t i = 0; i < sampler.trial_count(); ++i) {
          const auto parent = sampler.next(i);
          if (!parent) continue;
          ++bindings;
          try {
            bool children_hold = true;
            for (std::size_t k = 0; k < e.children.size() && children_hold; ++k) {
              Binding child;
              for (const auto& [v, t] : e.forward_maps[k]) {
                child[v] = evaluate(t, *parent, so.world);
              }
              children_hold = clause_holds(e.children[k], child, so.world);
            }
            if (children_hold && !clause_holds(e.parent, *parent, so.world)) {
              o.require(false, name + " " + e.goal_id + " " + e.process + " at " +
                                   binding_to_string(*parent, PrintStyle::kReport));
            }
          } catch (const Error&) {
          }
        }
      }
    }
  }

  const World w;
  std::vector<std::string> formulas = {
      "(implies p q)", "(implies p (and q r))", "(if p q r)", "(or (not p) (and q r))",
      "(implies (and p q) (or r (not p)))", "(equal p (if q r p))", "(not (implies p (or q r)))",
      "(and (or p q) (or (not p) r))", "(if (if p q r) (not q) (and p r))"};
  std::mt19937 gen(2024);
  for (int i = 0; i < 500; ++i) formulas.push_back(random_formula(gen, 4));
  for (const auto& text : formulas) {
    const Term f = parse_term(text);
    const std::vector<Clause> clauses = clausify(f);
    for (int bits = 0; bits < 8; ++bits) {
      const Binding b{{"p", Value::boolean(bits & 1)},
                      {"q", Value::boolean(bits & 2)},
                      {"r", Value::boolean(bits & 4)}};
      bool all = true;
      for (const auto& c : clauses) all = all && clause_holds(c, b, w);
      if (all != !evaluate(f, b, w).is_nil()) o.require(false, "clausify disagrees on " + text);
    }
  }
  if (o.pass) {
    o.detail = std::to_string(applications) + " applications, " + std::to_string(bindings) +
               " bindings, " + std::to_string(formulas.size()) + " formulas";
  }
  return o;
}

Outcome criterion10() {
  Outcome o;
  for (const auto& name : kCorpus) {
    for (std::uint64_t seed : {24ull, 7ull}) {
      SessionFlags flags;
      flags.test.seed = seed;
      const std::string a = render_structured(process_file(corpus(name), flags));
      const std::string b = render_structured(process_file(corpus(name), flags));
      o.require(a == b, name + " differs at seed " + std::to_string(seed));
    }
  }
  if (o.pass) o.detail = std::to_string(kCorpus.size()) + " files, 2 seeds each";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::function<Outcome()>> criteria = {
      criterion1, criterion2, criterion3, criterion4, criterion5,
      criterion6, criterion7, criterion8, criterion9, criterion10};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failures;
    std::printf("Criterion %zu: %s %s\n", i + 1, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
