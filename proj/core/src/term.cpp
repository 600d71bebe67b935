#include "sedan/term.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <unordered_set>

#include "sedan/builtins.hpp"
#include "sedan/error.hpp"

namespace sedan {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Term Term::var(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kVar;
  n->hash = mix(0xa1, std::hash<std::string>{}(name));
  n->name = std::move(name);
  return Term(std::move(n));
}

Term::Term() : Term(quote(Value::nil())) {}

Term Term::quote(Value v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kQuote;
  n->hash = mix(0xb2, v.hash());
  n->value = std::move(v);
  return Term(std::move(n));
}

Term Term::app(std::string fn, std::vector<Term> args) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kApp;
  std::size_t h = mix(0xc3, std::hash<std::string>{}(fn));
  std::size_t size = 1;
  for (const auto& a : args) {
    h = mix(h, a.hash());
    size += a.size();
  }
  n->hash = h;
  n->size = size;
  n->name = std::move(fn);
  n->args = std::move(args);
  return Term(std::move(n));
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Term::Kind::kVar:
      return a.name() == b.name();
    case Term::Kind::kQuote:
      return a.value() == b.value();
    case Term::Kind::kApp:
      return a.name() == b.name() && a.args() == b.args();
  }
  return false;
}

bool term_less(const Term& a, const Term& b) {
  if (a.kind() != b.kind()) return a.kind() < b.kind();
  switch (a.kind()) {
    case Term::Kind::kVar:
      return a.name() < b.name();
    case Term::Kind::kQuote:
      return compare(a.value(), b.value()) < 0;
    case Term::Kind::kApp:
      if (a.name() != b.name()) return a.name() < b.name();
      return std::lexicographical_compare(a.args().begin(), a.args().end(),
                                          b.args().begin(), b.args().end(), term_less);
  }
  return false;
}

namespace {

void collect_vars(const Term& t, std::vector<std::string>& out,
                  std::unordered_set<std::string>& seen) {
  switch (t.kind()) {
    case Term::Kind::kVar:
      if (seen.insert(t.name()).second) out.push_back(t.name());
      return;
    case Term::Kind::kQuote:
      return;
    case Term::Kind::kApp:
      for (const auto& a : t.args()) collect_vars(a, out, seen);
      return;
  }
}

}  // namespace

std::vector<std::string> free_vars_ordered(const Term& t) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  collect_vars(t, out, seen);
  return out;
}

std::vector<std::string> free_vars_ordered(const std::vector<Term>& terms) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const auto& t : terms) collect_vars(t, out, seen);
  return out;
}

std::set<std::string> free_vars(const Term& t) {
  auto v = free_vars_ordered(t);
  return {v.begin(), v.end()};
}

bool occurs_var(const Term& t, std::string_view var) {
  switch (t.kind()) {
    case Term::Kind::kVar:
      return t.name() == var;
    case Term::Kind::kQuote:
      return false;
    case Term::Kind::kApp:
      return std::any_of(t.args().begin(), t.args().end(),
                         [&](const Term& a) { return occurs_var(a, var); });
  }
  return false;
}

bool occurs_term(const Term& haystack, const Term& needle) {
  if (haystack == needle) return true;
  if (!haystack.is_app() || haystack.size() <= needle.size()) return false;
  return std::any_of(haystack.args().begin(), haystack.args().end(),
                     [&](const Term& a) { return occurs_term(a, needle); });
}

Term substitute(const Term& t, const Substitution& s) {
  switch (t.kind()) {
    case Term::Kind::kVar: {
      auto it = s.find(t.name());
      return it == s.end() ? t : it->second;
    }
    case Term::Kind::kQuote:
      return t;
    case Term::Kind::kApp: {
      std::vector<Term> args;
      args.reserve(t.args().size());
      bool changed = false;
      for (const auto& a : t.args()) {
        args.push_back(substitute(a, s));
        changed |= args.back() != a;
      }
      return changed ? Term::app(t.name(), std::move(args)) : t;
    }
  }
  return t;
}

Term replace_subterm(const Term& t, const Term& from, const Term& to) {
  if (t == from) return to;
  if (!t.is_app()) return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  bool changed = false;
  for (const auto& a : t.args()) {
    args.push_back(replace_subterm(a, from, to));
    changed |= args.back() != a;
  }
  return changed ? Term::app(t.name(), std::move(args)) : t;
}

namespace {

bool is_self_quoting(const Value& v) {
  if (v.is_nil() || v.is_t()) return true;
  if (v.is_symbol()) return !v.symbol_name().empty() && v.symbol_name()[0] == ':';
  return !v.is_pair();
}

void print_name(std::string& out, const std::string& name, PrintStyle style) {
  out += to_string(Value::symbol(name), style);
}

void print_term(std::string& out, const Term& t, PrintStyle style) {
  switch (t.kind()) {
    case Term::Kind::kVar:
      if (t.name() == "nil" || t.name() == "t") {
        out += '|' + t.name() + '|';
      } else {
        print_name(out, t.name(), style);
      }
      return;
    case Term::Kind::kQuote:
      if (!is_self_quoting(t.value())) out += '\'';
      out += to_string(t.value(), style);
      return;
    case Term::Kind::kApp:
      out += '(';
      print_name(out, t.name(), style);
      for (const auto& a : t.args()) {
        out += ' ';
        print_term(out, a, style);
      }
      out += ')';
      return;
  }
}

[[noreturn]] void fail(const Sexp& s, const std::string& msg) { throw ParseError(msg, s.pos); }

void expect_args(const Sexp& s, std::size_t lo, std::size_t hi) {
  const std::size_t n = s.items.size() - 1;
  if (n < lo || n > hi) {
    std::string want = lo == hi ? std::to_string(lo)
                                : std::to_string(lo) + ".." + std::to_string(hi);
    fail(s, "'" + s.items[0].symbol_name() + "' expects " + want + " argument(s), got " +
                std::to_string(n));
  }
}

Term nest_right(const std::string& fn, std::vector<Term> args) {
  Term acc = args.back();
  for (std::size_t i = args.size() - 1; i-- > 0;) acc = Term::app(fn, {args[i], acc});
  return acc;
}

/// car/cdr chain for c[ad]+r names, applied right-to-left.
bool is_cxr(std::string_view name) {
  if (name.size() < 4 || name.size() > 6 || name.front() != 'c' || name.back() != 'r') {
    return false;
  }
  for (std::size_t i = 1; i + 1 < name.size(); ++i) {
    if (name[i] != 'a' && name[i] != 'd') return false;
  }
  return true;
}

Term expand_cxr(std::string_view name, Term arg) {
  for (std::size_t i = name.size() - 1; i-- > 1;) {
    arg = Term::app(name[i] == 'a' ? "car" : "cdr", {std::move(arg)});
  }
  return arg;
}

Term translate_impl(const Sexp& s);

std::vector<Term> translate_args(const Sexp& s) {
  std::vector<Term> out;
  for (std::size_t i = 1; i < s.items.size(); ++i) out.push_back(translate_impl(s.items[i]));
  return out;
}

Term translate_cond(const Sexp& s) {
  // Built from the last clause backwards.
  Term acc = Term::nil();
  for (std::size_t i = s.items.size(); i-- > 1;) {
    const Sexp& clause = s.items[i];
    if (!clause.is_proper_list()) fail(clause, "cond clause must be a list");
    Term test = translate_impl(clause.items[0]);
    if (clause.items.size() == 1) {
      acc = Term::app("or", {test, acc});
      continue;
    }
    Term body = translate_impl(clause.items.back());
    if (test.is_t()) {
      acc = body;
    } else {
      acc = Term::app("if", {test, body, acc});
    }
  }
  return acc;
}

Term translate_let(const Sexp& s) {
  expect_args(s, 2, 2);
  const Sexp& bindings = s.items[1];
  Substitution sub;
  if (!(bindings.is_atom() && bindings.atom.is_nil())) {
    if (!bindings.is_proper_list()) fail(bindings, "let bindings must be a list");
    for (const auto& b : bindings.items) {
      if (!b.is_proper_list() || b.items.size() != 2 || !b.items[0].is_symbol()) {
        fail(b, "let binding must be (var expr)");
      }
      sub[b.items[0].symbol_name()] = translate_impl(b.items[1]);
    }
  }
  return substitute(translate_impl(s.items[2]), sub);
}

Term translate_impl(const Sexp& s) {
  if (s.is_atom()) {
    if (s.atom.is_symbol()) {
      const auto& name = s.atom.symbol_name();
      if (s.atom.is_nil() || s.atom.is_t() || (!name.empty() && name[0] == ':')) {
        return Term::quote(s.atom);
      }
      return Term::var(name);
    }
    return Term::quote(s.atom);
  }
  if (!s.tail.empty()) fail(s, "dotted pair is not a term");
  const Sexp& head = s.items[0];
  if (!head.is_symbol()) fail(head, "function position must be a symbol");
  const std::string& fn = head.symbol_name();
  const std::size_t n = s.items.size() - 1;

  if (fn == "quote") {
    expect_args(s, 1, 1);
    return Term::quote(s.items[1].to_value());
  }
  if (fn == "cond") return translate_cond(s);
  if (fn == "let") return translate_let(s);
  if (fn == "and" || fn == "or") {
    if (n == 0) return fn == "and" ? Term::t() : Term::nil();
    auto args = translate_args(s);
    if (n == 1) return args[0];
    return nest_right(fn, std::move(args));
  }
  if (fn == "+" || fn == "*") {
    auto args = translate_args(s);
    const long long unit = fn == "+" ? 0 : 1;
    if (n == 0) return Term::quote(Value::integer(unit));
    if (n == 1) return Term::app(fn, {Term::quote(Value::integer(unit)), args[0]});
    return nest_right(fn, std::move(args));
  }
  if (fn == "list") {
    Term acc = Term::nil();
    auto args = translate_args(s);
    for (auto it = args.rbegin(); it != args.rend(); ++it) acc = Term::app("cons", {*it, acc});
    return acc;
  }
  if (fn == ">" || fn == "<=" || fn == ">=" || fn == "=" || fn == "/=") {
    expect_args(s, 2, 2);
    auto a = translate_args(s);
    if (fn == ">") return Term::app("<", {a[1], a[0]});
    if (fn == "<=") return Term::app("not", {Term::app("<", {a[1], a[0]})});
    if (fn == ">=") return Term::app("not", {Term::app("<", {a[0], a[1]})});
    if (fn == "=") return Term::app("equal", {a[0], a[1]});
    return Term::app("not", {Term::app("equal", {a[0], a[1]})});
  }
  if (fn == "endp" || fn == "atom") {
    expect_args(s, 1, 1);
    return Term::app("not", {Term::app("consp", translate_args(s))});
  }
  if (fn == "first" || fn == "second" || fn == "third" || fn == "fourth" || fn == "rest") {
    expect_args(s, 1, 1);
    Term arg = translate_impl(s.items[1]);
    if (fn == "rest") return Term::app("cdr", {arg});
    const int drops = fn == "first" ? 0 : fn == "second" ? 1 : fn == "third" ? 2 : 3;
    for (int i = 0; i < drops; ++i) arg = Term::app("cdr", {arg});
    return Term::app("car", {arg});
  }
  if (is_cxr(fn) && fn != "car" && fn != "cdr") {
    expect_args(s, 1, 1);
    return expand_cxr(fn, translate_impl(s.items[1]));
  }
  if (fn == "real/rationalp" || fn == "acl2-numberp") {
    expect_args(s, 1, 1);
    return Term::app("rationalp", translate_args(s));
  }
  if (const Builtin* b = find_builtin(fn)) expect_args(s, b->min_arity, b->max_arity);
  return Term::app(fn, translate_args(s));
}

}  // namespace

std::string to_string(const Term& t, PrintStyle style) {
  std::string out;
  print_term(out, t, style);
  return out;
}

Term translate(const Sexp& s) { return translate_impl(s); }

Term parse_term(std::string_view text) { return translate(read_one(text)); }

bool is_boolean_function(std::string_view fn) {
  const Builtin* b = find_builtin(fn);
  return b != nullptr && b->boolean;
}

}  // namespace sedan
