#include <doctest.h>

#include <random>

#include "sedan/error.hpp"
#include "sedan/forms.hpp"
#include "sedan/term.hpp"

using namespace sedan;

TEST_CASE("parse-forms examples") {
  auto forms = parse_forms("(defdata loi (listof integer))");
  REQUIRE(forms.size() == 1);
  CHECK(forms[0].kind == Form::Kind::kDefdata);
  CHECK(forms[0].name == "loi");

  CHECK(parse_forms("").empty());
  CHECK(parse_forms("  ; only a comment\n").empty());

  forms = parse_forms("(defun rev (x) (if (endp x) nil (append (rev (cdr x)) (list (car x)))))");
  REQUIRE(forms.size() == 1);
  CHECK(forms[0].kind == Form::Kind::kDefun);
  CHECK(forms[0].formals == std::vector<std::string>{"x"});
}

TEST_CASE("parse-forms reports positioned errors") {
  auto pos_of = [](const char* text) {
    try {
      parse_forms(text);
    } catch (const ParseError& e) {
      return e.pos();
    }
    FAIL("no error for " << text);
    return SourcePos{};
  };
  SourcePos p = pos_of("(defun f (x)\n  (car x)");
  CHECK(p.line == 1);
  CHECK(p.column == 1);
  p = pos_of("(thm t)\n  )");
  CHECK(p.line == 2);
  CHECK(p.column == 3);
  p = pos_of("\n(frobnicate 1)");
  CHECK(p.line == 2);
  CHECK(p.column == 2);
  p = pos_of("(defun f (x))");
  CHECK(p.line == 1);
  p = pos_of("(thm (car 1 2))");
  CHECK(p.column == 6);
  p = pos_of("(thm t :hints ((\"Goal\" :do-not '(induct))))");
  CHECK(p.line == 1);
}

TEST_CASE("form printing reads back to the same form") {
  const char* text =
      "(defdata (sexp (oneof symbol slist)) (slist (oneof nil (cons sexp slist))))\n"
      "(thm (implies (posp n) (natp n)) :hints ((\"Goal\" :do-not '(generalize) :trials 5)))\n"
      "(set-testing :trials 50 :dist uniform)\n"
      "(test? (equal x x) :trials 3)\n";
  const auto forms = parse_forms(text);
  REQUIRE(forms.size() == 4);
  for (const auto& f : forms) {
    const auto again = parse_forms(to_string(f));
    REQUIRE(again.size() == 1);
    CHECK(to_string(again[0]) == to_string(f));
    CHECK(again[0].kind == f.kind);
    CHECK(again[0].formula == f.formula);
  }
  CHECK(forms[1].hints.at(0).settings.do_not == std::set<std::string>{"generalize"});
  CHECK(forms[1].hints.at(0).settings.trials == 5u);
}

TEST_CASE("free-vars examples") {
  CHECK(free_vars(parse_term("(equal (rev (rev x)) x)")) == std::set<std::string>{"x"});
  CHECK(free_vars(parse_term("(quote (a b c))")).empty());
  CHECK(free_vars(parse_term("'(a b c)")).empty());
  CHECK(free_vars(parse_term("(implies (posp n) (< m n))")) ==
        std::set<std::string>{"m", "n"});
}

TEST_CASE("surface syntax translation") {
  CHECK(to_string(parse_term("(> a b)")) == "(< b a)");
  CHECK(to_string(parse_term("(<= a b)")) == "(not (< b a))");
  CHECK(to_string(parse_term("(= a b)")) == "(equal a b)");
  CHECK(to_string(parse_term("(third x)")) == "(car (cdr (cdr x)))");
  CHECK(to_string(parse_term("(endp x)")) == "(not (consp x))");
  CHECK(to_string(parse_term("(and a b c)")) == "(and a (and b c))");
  CHECK(to_string(parse_term("(list 1 x)")) == "(cons 1 (cons x nil))");
  CHECK(parse_term("5").is_quote());
  CHECK(parse_term("\"s\"").is_quote());
  CHECK(parse_term("nil").is_nil());
}

namespace {

Term random_term(std::mt19937_64& g, int depth) {
  static const char* vars[] = {"x", "y", "zz", "a1"};
  static const char* consts[] = {"0", "-3/4", "nil", "t", "\"s\"", "#\\a", "(1 . b)", "sym"};
  static const char* fns[] = {"car", "cons", "equal", "if", "f", "g", "+", "not"};
  const auto pick = g() % 10;
  if (depth == 0 || pick < 3) {
    if (g() % 2) return Term::var(vars[g() % 4]);
    return Term::quote(read_value(consts[g() % 8]));
  }
  const std::string fn = fns[g() % 8];
  std::size_t n = fn == "if" ? 3 : fn == "car" || fn == "not" ? 1 : 2;
  if (fn == "f") n = g() % 4;
  std::vector<Term> args;
  for (std::size_t i = 0; i < n; ++i) args.push_back(random_term(g, depth - 1));
  return Term::app(fn, std::move(args));
}

}  // namespace

TEST_CASE("print/parse round trip over random terms") {
  std::mt19937_64 g(11);
  for (int i = 0; i < 1000; ++i) {
    const Term t = random_term(g, 5);
    const std::string s = to_string(t);
    CHECK_MESSAGE(parse_term(s) == t, s);
  }
}
