#include "sedan/forms.hpp"

#include <algorithm>
#include <cctype>

#include "sedan/error.hpp"

namespace sedan {

std::string_view to_string(Form::Kind k) {
  switch (k) {
    case Form::Kind::kDefun:
      return "defun";
    case Form::Kind::kDefdata:
      return "defdata";
    case Form::Kind::kDefdataSubtype:
      return "defdata-subtype";
    case Form::Kind::kDefrule:
      return "defrule";
    case Form::Kind::kThm:
      return "thm";
    case Form::Kind::kTest:
      return "test?";
    case Form::Kind::kSetTesting:
      return "set-testing";
    case Form::Kind::kInclude:
      return "include";
  }
  return "?";
}

namespace {

[[noreturn]] void fail(const Sexp& s, const std::string& msg) { throw ParseError(msg, s.pos); }

const std::vector<std::string> kTestingKeys = {
    "trials", "mode", "dist", "seed", "edge-evidence", "uniform-bits", "exhaustive-bound",
    "max-rewrite-depth", "display"};

std::string symbol_of(const Sexp& s, const std::string& what) {
  if (!s.is_symbol() || s.symbol_name().empty() || s.symbol_name()[0] == ':') {
    fail(s, "expected " + what);
  }
  return s.symbol_name();
}

std::size_t natural_of(const Sexp& s, const std::string& what) {
  if (!s.is_atom() || !s.atom.is_integer() || s.atom.as_rational() < 0) {
    fail(s, what + " must be a natural number");
  }
  return boost::multiprecision::numerator(s.atom.as_rational()).convert_to<std::size_t>();
}

bool flag_of(const Sexp& s, const std::string& what) {
  if (s.is_symbol("t")) return true;
  if (s.is_symbol("nil")) return false;
  fail(s, what + " must be t or nil");
}

Term term_of(const Sexp& s) { return translate(s); }

/// Strips a leading quote: 'x and (quote x) both yield x.
const Sexp& unquoted(const Sexp& s) {
  if (s.is_proper_list() && s.items.size() == 2 && s.items[0].is_symbol("quote")) {
    return s.items[1];
  }
  return s;
}

/// Keyword/value pairs after the positional arguments.
std::vector<std::pair<std::string, const Sexp*>> keywords(const Sexp& form, std::size_t from,
                                                          const std::vector<std::string>& allowed) {
  std::vector<std::pair<std::string, const Sexp*>> out;
  const auto& items = form.items;
  for (std::size_t i = from; i < items.size(); i += 2) {
    const Sexp& k = items[i];
    if (!k.is_symbol() || k.symbol_name().size() < 2 || k.symbol_name()[0] != ':') {
      fail(k, "expected a keyword");
    }
    const std::string key = k.symbol_name().substr(1);
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      fail(k, "unknown keyword :" + key + " for " + form.items[0].symbol_name());
    }
    if (i + 1 >= items.size()) fail(k, "keyword :" + key + " has no value");
    for (const auto& [seen, _] : out) {
      if (seen == key) fail(k, "duplicate keyword :" + key);
    }
    out.emplace_back(key, &items[i + 1]);
  }
  return out;
}

void expect_args(const Sexp& form, std::size_t min, std::size_t max) {
  const std::size_t n = form.items.size() - 1;
  if (n < min || n > max) {
    fail(form, form.items[0].symbol_name() + " expects " +
                   (min == max ? std::to_string(min)
                               : std::to_string(min) + " to " + std::to_string(max)) +
                   " arguments, got " + std::to_string(n));
  }
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::vector<UserHint> parse_hints(const Sexp& s) {
  const Sexp& list = unquoted(s);
  std::vector<UserHint> out;
  if (list.is_symbol("nil")) return out;
  if (!list.is_proper_list()) fail(s, "expected a list of hints");
  for (const auto& h : list.items) {
    if (!h.is_proper_list() || h.items.empty() || !h.items[0].is_atom() ||
        !h.items[0].atom.is_string()) {
      fail(h, "a hint starts with a goal name string");
    }
    UserHint hint;
    hint.goal_id = h.items[0].atom.string_text();
    for (const auto& [key, val] :
         keywords(h, 1, {"do-not", "trials", "backtrack", "computed-hint-replacement"})) {
      if (key == "do-not") {
        const Sexp& procs = unquoted(*val);
        if (procs.is_symbol("nil")) continue;
        if (!procs.is_proper_list()) fail(*val, ":do-not expects a list of process names");
        for (const auto& p : procs.items) {
          const std::string name = lower(symbol_of(p, "a process name"));
          if (!is_process_name(name)) fail(p, "unknown process " + name);
          hint.settings.do_not.insert(name);
        }
      } else if (key == "trials") {
        hint.settings.trials = natural_of(*val, ":trials");
      } else if (key == "backtrack") {
        const std::string name = lower(symbol_of(unquoted(*val), "a backtrack handler"));
        if (!is_backtrack_handler(name)) fail(*val, "unknown backtrack handler " + name);
        hint.settings.backtrack = name;
      } else {
        hint.settings.replace = flag_of(*val, ":computed-hint-replacement");
      }
    }
    out.push_back(std::move(hint));
  }
  return out;
}

Form parse_form(const Sexp& s) {
  if (!s.is_proper_list() || s.items.empty() || !s.items[0].is_symbol()) {
    fail(s, "a top-level form must be a list starting with a symbol");
  }
  Form f;
  f.source = s;
  const std::string head = s.items[0].symbol_name();
  const auto& it = s.items;
  if (head == "defun") {
    f.kind = Form::Kind::kDefun;
    expect_args(s, 3, 3);
    f.name = symbol_of(it[1], "a function name");
    if (!it[2].is_proper_list() && !it[2].is_symbol("nil")) fail(it[2], "expected formals");
    for (const auto& p : it[2].items) f.formals.push_back(symbol_of(p, "a formal parameter"));
    f.body = term_of(it[3]);
  } else if (head == "defdata") {
    f.kind = Form::Kind::kDefdata;
    if (it.size() >= 2 && it[1].is_proper_list()) {
      for (std::size_t i = 1; i < it.size(); ++i) {
        const Sexp& m = it[i];
        if (!m.is_proper_list() || m.items.size() != 2) {
          fail(m, "a mutual defdata member is (name type-expression)");
        }
        const std::string name = symbol_of(m.items[0], "a type name");
        f.members.push_back({name, parse_type_expr(m.items[1], name)});
      }
    } else {
      expect_args(s, 2, 2);
      f.name = symbol_of(it[1], "a type name");
      f.members.push_back({f.name, parse_type_expr(it[2], f.name)});
    }
    if (f.members.empty()) fail(s, "defdata needs at least one definition");
    f.name = f.members.front().name;
  } else if (head == "defdata-subtype") {
    f.kind = Form::Kind::kDefdataSubtype;
    if (it.size() < 3) expect_args(s, 2, 4);
    f.sub = symbol_of(it[1], "a type name");
    f.super = symbol_of(it[2], "a type name");
    for (const auto& [key, val] : keywords(s, 3, {"trust"})) f.trust = flag_of(*val, ":" + key);
  } else if (head == "defrule") {
    f.kind = Form::Kind::kDefrule;
    if (it.size() < 3) expect_args(s, 2, 6);
    f.name = symbol_of(it[1], "a rule name");
    f.formula = term_of(it[2]);
    for (const auto& [key, val] : keywords(s, 3, {"trust", "disabled"})) {
      if (key == "trust") {
        f.trust = flag_of(*val, ":trust");
      } else {
        f.enabled = !flag_of(*val, ":disabled");
      }
    }
  } else if (head == "thm") {
    f.kind = Form::Kind::kThm;
    if (it.size() < 2) expect_args(s, 1, 5);
    f.formula = term_of(it[1]);
    for (const auto& [key, val] : keywords(s, 2, {"hints", "trials"})) {
      if (key == "hints") {
        f.hints = parse_hints(*val);
      } else {
        f.trials = natural_of(*val, ":trials");
      }
    }
  } else if (head == "test?" || head == "top-level-test?") {
    f.kind = Form::Kind::kTest;
    if (it.size() < 2) expect_args(s, 1, 3);
    f.formula = term_of(it[1]);
    for (const auto& [key, val] : keywords(s, 2, {"trials"})) {
      f.trials = natural_of(*val, ":" + key);
    }
  } else if (head == "set-testing") {
    f.kind = Form::Kind::kSetTesting;
    for (const auto& [key, val] : keywords(s, 1, kTestingKeys)) {
      const Sexp& v = unquoted(*val);
      if (key == "mode") {
        if (!v.is_symbol() || !parse_test_mode(lower(v.symbol_name()))) {
          fail(v, ":mode must be random, exhaustive or mixed");
        }
      } else if (key == "dist") {
        if (!v.is_symbol() || !parse_distribution(lower(v.symbol_name()))) {
          fail(v, ":dist must be geometric or uniform");
        }
      } else {
        natural_of(v, ":" + key);
      }
      f.settings.push_back({key, v.to_value()});
    }
  } else if (head == "include") {
    f.kind = Form::Kind::kInclude;
    expect_args(s, 1, 1);
    if (!it[1].is_atom() || !it[1].atom.is_string()) fail(it[1], "include expects a path string");
    f.path = it[1].atom.string_text();
  } else {
    fail(it[0], "unknown top-level form " + head);
  }
  return f;
}

}  // namespace

std::vector<Form> parse_forms(std::string_view text) {
  std::vector<Form> out;
  for (const auto& s : read_all(text)) out.push_back(parse_form(s));
  return out;
}

std::string to_string(const Form& f) { return to_string(f.source); }

}  // namespace sedan
