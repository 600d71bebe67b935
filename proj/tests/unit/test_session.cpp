#include <doctest.h>

#include <json.hpp>

#include "helpers.hpp"
#include "sedan/eval.hpp"

using namespace sedan;
using nlohmann::json;

namespace {

const char* kRevFile = R"(
(defun rev (x)
  (if (endp x) nil (append (rev (cdr x)) (list (car x)))))
(test? (equal (rev (rev x)) x))
)";

/// Re-falsifies each printed counterexample of a report object.
void check_round_trip(const json& report, const Term& conjecture, const World& w) {
  for (const auto& ce : report["counterexamples"]) {
    Binding b;
    for (const auto& [var, text] : ce.items()) {
      const std::string s = text.get<std::string>();
      b[var] = s == "?" ? Value::nil() : read_value(s);
    }
    CHECK(evaluate(conjecture, b, w).is_nil());
  }
}

}  // namespace

TEST_CASE("an empty file succeeds") {
  const SessionOutcome o = process_text("", {});
  CHECK(o.exit_code == 0);
  CHECK(o.forms.empty());
  CHECK_FALSE(o.error.has_value());
  const json doc = json::parse(render_structured(o));
  CHECK(doc["forms"].empty());
  CHECK(doc["exit_code"] == 0);
  CHECK(doc["error"].is_null());
}

TEST_CASE("an undefined function stops the session") {
  const SessionOutcome o = process_text("(defun f (x) (g x))\n(test? (f x))", {});
  CHECK(o.exit_code == 2);
  REQUIRE(o.error.has_value());
  CHECK(o.error->find("g") != std::string::npos);
  CHECK(o.forms.size() == 1);
  CHECK(o.forms[0].status == FormStatus::kError);
}

TEST_CASE("parse errors carry a position") {
  const SessionOutcome o = process_text("(defun f (x)\n  (car x)", {});
  CHECK(o.exit_code == 2);
  REQUIRE(o.error.has_value());
  CHECK(o.error->find("<input>:") == 0);
}

TEST_CASE("a falsified test exits with 1 and prints the narrative") {
  const SessionOutcome o = process_text(kRevFile, {});
  CHECK(o.exit_code == 1);
  REQUIRE(o.forms.size() == 2);
  CHECK(o.forms[1].status == FormStatus::kFalsified);
  const std::string text = render_text(o);
  CHECK(text.find("We falsified the conjecture. Here are counterexamples:") != std::string::npos);
  CHECK(text.find("type alist ((X . ALL))") != std::string::npos);
}

TEST_CASE("structured output is deterministic and round trips") {
  SessionFlags flags;
  flags.test.seed = 77;
  const SessionOutcome a = process_text(kRevFile, flags);
  const SessionOutcome b = process_text(kRevFile, flags);
  const std::string ja = render_structured(a);
  CHECK(ja == render_structured(b));
  const json doc = json::parse(ja);
  REQUIRE(doc["forms"].size() == 2);
  const json& test = doc["forms"][1];
  CHECK(test["kind"] == "test?");
  CHECK(test["status"] == "falsified");
  CHECK(test["seed"].is_number());
  check_round_trip(test["report"], parse_term(test["label"].get<std::string>()), a.world);
}

TEST_CASE("corpus files round trip their counterexamples") {
  for (const char* name : {"rev.lisp", "triangle.lisp", "inequality.lisp", "gen-backtrack.lisp"}) {
    const SessionOutcome o = process_file(test::corpus(name), {});
    REQUIRE_MESSAGE(!o.error, name);
    const json doc = json::parse(render_structured(o));
    for (const auto& f : doc["forms"]) {
      if (f.contains("report")) {
        check_round_trip(f["report"], parse_term(f["label"].get<std::string>()), o.world);
      }
      if (f.contains("proof")) {
        check_round_trip(f["proof"], parse_term(f["label"].get<std::string>()), o.world);
      }
    }
  }
}

TEST_CASE("exit codes across the corpus") {
  const std::vector<std::pair<const char*, int>> expected = {
      {"rev.lisp", 1},        {"triangle.lisp", 1},   {"inequality.lisp", 1},
      {"gen-backtrack.lisp", 0}, {"base-rules.lisp", 0}, {"types.lisp", 0}};
  for (const auto& [name, code] : expected) {
    const SessionOutcome o = process_file(test::corpus(name), {});
    CHECK_MESSAGE(o.exit_code == code, name);
    bool falsified = false;
    for (const auto& f : o.forms) falsified |= f.status == FormStatus::kFalsified;
    CHECK((o.exit_code == 0) == (!o.error && !falsified));
  }
}

TEST_CASE("a missing file is an error") {
  const SessionOutcome o = process_file(test::corpus("no-such-file.lisp"), {});
  CHECK(o.exit_code == 2);
}

TEST_CASE("set-testing changes the defaults") {
  const SessionOutcome o =
      process_text("(set-testing :trials 17 :dist uniform :seed 5)\n(test? (natp n))", {});
  REQUIRE(o.forms.size() == 2);
  REQUIRE(o.forms[1].test.has_value());
  CHECK(o.forms[1].test->trials == 17);
  CHECK(o.forms[1].test->dist == Distribution::kUniform);
  CHECK(process_text("(set-testing :mode sideways)", {}).exit_code == 2);
}

TEST_CASE("thm seeds are deterministic by default") {
  const char* text = "(thm (implies (natp n) (< n 100)))\n(thm (implies (natp n) (< n 100)))";
  const SessionOutcome o = process_text(text, {});
  REQUIRE(o.forms.size() == 2);
  CHECK(o.forms[0].seed == o.forms[1].seed);
  SessionFlags flags;
  flags.deterministic = false;
  const SessionOutcome r = process_text(text, flags);
  CHECK(r.forms[0].seed != r.forms[1].seed);
}

TEST_CASE("a false rule is rejected unless trusted") {
  CHECK(process_text("(defrule bad (equal (+ x 1) x))", {}).exit_code == 2);
  CHECK(process_text("(defrule bad (equal (+ x 1) x) :trust t)", {}).exit_code == 0);
}
