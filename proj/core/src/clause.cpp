#include "sedan/clause.hpp"

#include <optional>

namespace sedan {

namespace {

constexpr std::size_t kMaxClauses = 512;

Term mk_not(const Term& t) { return Term::app("not", {t}); }

// First if-subterm in pre-order, excluding `t` itself.
std::optional<Term> find_nested_if(const Term& t) {
  if (!t.is_app()) return std::nullopt;
  for (const auto& a : t.args()) {
    if (a.is_app("if")) return a;
    if (auto found = find_nested_if(a)) return found;
  }
  return std::nullopt;
}

enum class Step { kNone, kReplace, kSplit };

struct Expansion {
  Step step = Step::kNone;
  std::vector<Term> first;   // kReplace: replacement literals; kSplit: first case
  std::vector<Term> second;  // kSplit: second case
};

Expansion expand_literal(const Term& l, bool allow_lift) {
  Expansion e;
  auto replace = [&](std::vector<Term> lits) {
    e.step = Step::kReplace;
    e.first = std::move(lits);
    return e;
  };
  auto split = [&](std::vector<Term> a, std::vector<Term> b) {
    e.step = Step::kSplit;
    e.first = std::move(a);
    e.second = std::move(b);
    return e;
  };
  if (l.is_app("implies")) return replace({negate(l.arg(0)), l.arg(1)});
  if (l.is_app("or")) return replace({l.arg(0), l.arg(1)});
  if (l.is_app("and")) return split({l.arg(0)}, {l.arg(1)});
  if (l.is_app("if")) return split({negate(l.arg(0)), l.arg(1)}, {l.arg(0), l.arg(2)});
  if (l.is_app("not")) {
    const Term& a = l.arg(0);
    if (a.is_quote()) return replace({Term::quote(Value::boolean(a.value().is_nil()))});
    if (a.is_app("not")) return replace({a.arg(0)});
    if (a.is_app("and")) return replace({negate(a.arg(0)), negate(a.arg(1))});
    if (a.is_app("or")) return split({negate(a.arg(0))}, {negate(a.arg(1))});
    if (a.is_app("implies")) return split({a.arg(0)}, {negate(a.arg(1))});
    if (a.is_app("if")) {
      return split({negate(a.arg(0)), negate(a.arg(1))}, {a.arg(0), negate(a.arg(2))});
    }
  }
  if (allow_lift) {
    if (auto inner = find_nested_if(l)) {
      const Term lifted = Term::app(
          "if", {inner->arg(0), replace_subterm(l, *inner, inner->arg(1)),
                 replace_subterm(l, *inner, inner->arg(2))});
      return expand_literal(lifted, false);
    }
  }
  return e;
}

Clause with_literals(const Clause& c, std::size_t i, const std::vector<Term>& lits) {
  Clause out(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(i));
  out.insert(out.end(), lits.begin(), lits.end());
  out.insert(out.end(), c.begin() + static_cast<std::ptrdiff_t>(i) + 1, c.end());
  return out;
}

}  // namespace

Term negate(const Term& t) {
  if (t.is_app("not")) return t.arg(0);
  if (t.is_quote()) return Term::quote(Value::boolean(t.value().is_nil()));
  return mk_not(t);
}

std::vector<Clause> clausify_literals(const Clause& literals) {
  std::vector<Clause> done;
  std::vector<Clause> work{literals};
  while (!work.empty()) {
    Clause c = std::move(work.back());
    work.pop_back();
    const bool allow_lift = done.size() + work.size() < kMaxClauses;
    bool tautology = false;
    bool changed = false;
    for (std::size_t i = 0; i < c.size() && !changed; ++i) {
      const Term& l = c[i];
      if (l.is_quote()) {
        if (l.value().truthy()) {
          tautology = true;
          break;
        }
        c.erase(c.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        work.push_back(std::move(c));
        break;
      }
      Expansion e = expand_literal(l, allow_lift);
      if (e.step == Step::kReplace) {
        work.push_back(with_literals(c, i, e.first));
        changed = true;
      } else if (e.step == Step::kSplit) {
        // Pushed in reverse so the first case is finished first.
        work.push_back(with_literals(c, i, e.second));
        work.push_back(with_literals(c, i, e.first));
        changed = true;
      }
    }
    if (tautology) continue;
    if (!changed) done.push_back(std::move(c));
  }
  return done;
}

std::vector<Clause> clausify(const Term& formula) { return clausify_literals({formula}); }

std::vector<Term> clause_hypotheses(const Clause& c) {
  std::vector<Term> out;
  for (std::size_t i = 0; i + 1 < c.size(); ++i) out.push_back(negate(c[i]));
  return out;
}

Term clause_conclusion(const Clause& c) { return c.empty() ? Term::nil() : c.back(); }

Term clause_to_term(const Clause& c) {
  auto hyps = clause_hypotheses(c);
  const Term concl = clause_conclusion(c);
  if (hyps.empty()) return concl;
  Term h = hyps.back();
  for (std::size_t i = hyps.size() - 1; i-- > 0;) h = Term::app("and", {hyps[i], h});
  return Term::app("implies", {h, concl});
}

std::vector<std::string> clause_vars(const Clause& c) { return free_vars_ordered(c); }

std::string to_string(const Clause& c, PrintStyle style) {
  auto name = [&](const char* s) { return to_string(Value::symbol(s), style); };
  auto hyps = clause_hypotheses(c);
  const std::string concl = to_string(clause_conclusion(c), style);
  if (hyps.empty()) return concl;
  std::string h;
  if (hyps.size() == 1) {
    h = to_string(hyps[0], style);
  } else {
    h = "(" + name("and");
    for (const auto& t : hyps) h += " " + to_string(t, style);
    h += ")";
  }
  return "(" + name("implies") + " " + h + " " + concl + ")";
}

}  // namespace sedan
