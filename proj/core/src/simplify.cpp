#include "sedan/simplify.hpp"

#include <algorithm>

#include "sedan/builtins.hpp"
#include "sedan/datadef.hpp"
#include "sedan/error.hpp"
#include "sedan/eval.hpp"

namespace sedan {

void RewriteContext::assume(const Term& t, bool value) {
  if (t.is_app("not")) {
    assume(t.arg(0), !value);
    return;
  }
  if (t.is_quote()) return;
  auto& list = value ? known_true : known_false;
  if (std::find(list.begin(), list.end(), t) == list.end()) list.push_back(t);
  // A true conjunction makes each part true; a false disjunction makes
  // each part false.
  if (value && t.is_app("and")) {
    assume(t.arg(0), true);
    assume(t.arg(1), true);
  } else if (!value && t.is_app("or")) {
    assume(t.arg(0), false);
    assume(t.arg(1), false);
  }
}

bool match_term(const Term& pattern, const Term& term, Substitution& subst) {
  switch (pattern.kind()) {
    case Term::Kind::kVar: {
      auto it = subst.find(pattern.name());
      if (it != subst.end()) return it->second == term;
      subst.emplace(pattern.name(), term);
      return true;
    }
    case Term::Kind::kQuote:
      return term == pattern;
    case Term::Kind::kApp:
      if (!term.is_app() || term.name() != pattern.name() ||
          term.args().size() != pattern.args().size()) {
        return false;
      }
      for (std::size_t i = 0; i < pattern.args().size(); ++i) {
        if (!match_term(pattern.arg(i), term.arg(i), subst)) return false;
      }
      return true;
  }
  return false;
}

Rewriter::Rewriter(const World& world) : world_(world) {}

Term Rewriter::rewrite(const Term& t, const RewriteContext& ctx, bool iff) {
  RewriteContext local = ctx;
  return rw(t, local, iff, 0);
}

bool Rewriter::tick() {
  if (++steps_ > world_.settings.max_rewrite_steps) exhausted_ = true;
  return !exhausted_;
}

namespace {

bool contains(const std::vector<Term>& v, const Term& t) {
  return std::find(v.begin(), v.end(), t) != v.end();
}

Term mk(const char* fn, std::vector<Term> args) { return Term::app(fn, std::move(args)); }

/// Rewrites producing larger terms count as an exhausted budget.
constexpr std::size_t kMaxTermSize = 100000;

}  // namespace

Term Rewriter::rw(const Term& t, RewriteContext& ctx, bool iff, std::size_t depth) {
  if (exhausted_) return t;
  switch (t.kind()) {
    case Term::Kind::kQuote:
      return t;
    case Term::Kind::kVar:
      if (contains(ctx.known_false, t)) return Term::nil();
      if (iff && contains(ctx.known_true, t)) return Term::t();
      return t;
    case Term::Kind::kApp:
      return rw_app(t, ctx, iff, depth);
  }
  return t;
}

Term Rewriter::rw_app(const Term& t, RewriteContext& ctx, bool iff, std::size_t depth) {
  const std::string& fn = t.name();
  auto boolean_valued = [&](const Term& x) {
    return (x.is_quote() && (x.is_t() || x.is_nil())) ||
           (x.is_app() && world_.is_boolean_function(x.name()));
  };

  if (fn == "if") {
    const Term c = rw(t.arg(0), ctx, true, depth);
    if (c.is_quote()) return rw(c.value().truthy() ? t.arg(1) : t.arg(2), ctx, iff, depth);
    RewriteContext then_ctx = ctx;
    then_ctx.assume(c, true);
    const Term a = rw(t.arg(1), then_ctx, iff, depth);
    RewriteContext else_ctx = ctx;
    else_ctx.assume(c, false);
    const Term b = rw(t.arg(2), else_ctx, iff, depth);
    if (a == b) return a;
    if (a.is_t() && b.is_nil() && (iff || boolean_valued(c))) return c;
    if (a.is_nil() && b.is_t()) return negate(c);
    return mk("if", {c, a, b});
  }
  if (fn == "and") {
    const Term a = rw(t.arg(0), ctx, true, depth);
    if (a.is_nil()) return Term::nil();
    if (a.is_quote()) return rw(t.arg(1), ctx, iff, depth);
    RewriteContext inner = ctx;
    inner.assume(a, true);
    const Term b = rw(t.arg(1), inner, iff, depth);
    if (b.is_nil()) return Term::nil();
    if (b.is_quote() && (iff || (b.is_t() && boolean_valued(a)))) return a;
    return mk("and", {a, b});
  }
  if (fn == "or") {
    const Term a = rw(t.arg(0), ctx, iff, depth);
    if (a.is_quote()) return a.is_nil() ? rw(t.arg(1), ctx, iff, depth) : a;
    RewriteContext inner = ctx;
    inner.assume(a, false);
    const Term b = rw(t.arg(1), inner, iff, depth);
    if (b.is_nil() && (iff || boolean_valued(a))) return a;
    if (iff && b.is_quote()) return Term::t();
    return mk("or", {a, b});
  }
  if (fn == "implies") {
    const Term a = rw(t.arg(0), ctx, true, depth);
    if (a.is_nil()) return Term::t();
    RewriteContext inner = ctx;
    if (!a.is_quote()) inner.assume(a, true);
    const Term b = rw(t.arg(1), inner, true, depth);
    if (b.is_quote()) return b.is_nil() ? (a.is_quote() ? Term::nil() : negate(a)) : Term::t();
    if (a.is_quote() && (iff || boolean_valued(b))) return b;
    return mk("implies", {a, b});
  }
  if (fn == "not") {
    const Term a = rw(t.arg(0), ctx, true, depth);
    if (a.is_quote()) return Term::quote(Value::boolean(a.is_nil()));
    if (a.is_app("not") && (iff || boolean_valued(a.arg(0)))) return a.arg(0);
    return mk("not", {a});
  }

  std::vector<Term> args;
  args.reserve(t.args().size());
  bool ground = true;
  for (const auto& a : t.args()) {
    args.push_back(rw(a, ctx, false, depth));
    ground = ground && args.back().is_quote();
  }
  // Constants go on the right of equalities.
  if (fn == "equal" && args[0].is_quote() && !args[1].is_quote()) std::swap(args[0], args[1]);
  const Term u = Term::app(fn, args);
  if (exhausted_) return u;

  if (ground && world_.is_known_function(fn)) {
    std::vector<Value> vals;
    for (const auto& a : args) vals.push_back(a.value());
    try {
      Value v = Evaluator(world_).call(fn, vals);
      tick();
      return Term::quote(std::move(v));
    } catch (const Error&) {
      // Leave the call symbolic.
    }
  }
  const Term flipped = fn == "equal" ? Term::app(fn, {args[1], args[0]}) : u;
  if (contains(ctx.known_false, u) || contains(ctx.known_false, flipped)) return Term::nil();
  if ((contains(ctx.known_true, u) || contains(ctx.known_true, flipped)) &&
      (iff || world_.is_boolean_function(fn))) {
    return Term::t();
  }

  // Primitive axioms.
  if (fn == "equal" && args[0] == args[1]) return Term::t();
  if ((fn == "car" || fn == "cdr") && args[0].is_app("cons")) {
    tick();
    return args[0].arg(fn == "car" ? 0 : 1);
  }
  if (fn == "consp" && args[0].is_app("cons")) return Term::t();

  // Open non-recursive definitions.
  if (const FunctionDef* def = world_.function(fn); def && !def->recursive) {
    Substitution s;
    for (std::size_t i = 0; i < def->formals.size(); ++i) s[def->formals[i]] = args[i];
    if (!tick()) return u;
    const Term body = substitute(def->body, s);
    if (body.size() > kMaxTermSize) {
      exhausted_ = true;
      return u;
    }
    return rw(body, ctx, iff, depth);
  }
  if (const TypeEntry* te = world_.types().by_recognizer(fn); te && te->definition) {
    if (!tick()) return u;
    return rw(substitute(*te->definition, {{"x", args[0]}}), ctx, iff, depth);
  }
  if (auto r = apply_rules(u, ctx, iff, depth)) return *r;
  return u;
}

std::optional<Term> Rewriter::apply_rules(const Term& t, RewriteContext& ctx, bool iff,
                                          std::size_t depth) {
  const auto& rules = world_.rules();
  // Most recent first.
  for (auto it = rules.rbegin(); it != rules.rend(); ++it) {
    const RewriteRule& rule = **it;
    if (!rule.enabled || (rule.iff && !iff)) continue;
    Substitution s;
    if (!match_term(rule.lhs, t, s)) continue;
    if (!rule.hyps.empty() && depth >= world_.settings.max_rewrite_depth) continue;
    bool relieved = true;
    for (const auto& h : rule.hyps) {
      RewriteContext hctx = ctx;
      const Term r = rw(substitute(h, s), hctx, true, depth + 1);
      if (!r.is_quote() || r.is_nil()) {
        relieved = false;
        break;
      }
    }
    if (!relieved || exhausted_) continue;
    if (!tick()) return std::nullopt;
    const Term rhs = substitute(rule.rhs, s);
    if (rhs.size() > kMaxTermSize) {
      exhausted_ = true;
      return std::nullopt;
    }
    return rw(rhs, ctx, iff, depth);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

std::optional<Clause> clean_literals(const Clause& clause) {
  Clause out;
  for (const auto& l : clause) {
    if (l.is_quote()) {
      if (l.value().truthy()) return std::nullopt;
      continue;
    }
    if (std::find(out.begin(), out.end(), l) != out.end()) continue;
    out.push_back(l);
  }
  for (const auto& l : out) {
    const Term n = negate(l);
    if (std::find(out.begin(), out.end(), n) != out.end()) return std::nullopt;
  }
  return out;
}

SimplifyOutcome simplify_clause(const Clause& clause, const World& world) {
  SimplifyOutcome out;
  Clause lits = clause;
  Rewriter rw(world);
  for (std::size_t i = 0; i < lits.size(); ++i) {
    RewriteContext ctx;
    for (std::size_t j = 0; j < lits.size(); ++j) {
      if (j != i) ctx.assume(lits[j], false);
    }
    lits[i] = rw.rewrite(lits[i], ctx, true);
    if (lits[i].is_quote() && lits[i].value().truthy()) {
      out.kind = SimplifyOutcome::Kind::kProved;
      return out;
    }
  }
  if (rw.exhausted()) {
    out.diagnostic = "rewrite budget of " + std::to_string(world.settings.max_rewrite_steps) +
                     " steps exhausted";
    return out;
  }
  std::optional<Clause> cleaned = clean_literals(lits);
  if (!cleaned) {
    out.kind = SimplifyOutcome::Kind::kProved;
    return out;
  }
  lits = std::move(*cleaned);

  // Equality substitution on hypotheses (not (equal v term)).
  const std::vector<std::string> parent_vars = clause_vars(clause);
  Substitution composed;
  for (const auto& v : parent_vars) composed[v] = Term::var(v);
  for (bool again = true; again;) {
    again = false;
    for (std::size_t i = 0; i < lits.size(); ++i) {
      const Term& l = lits[i];
      if (!l.is_app("not") || !l.arg(0).is_app("equal")) continue;
      const Term& a = l.arg(0).arg(0);
      const Term& b = l.arg(0).arg(1);
      std::string v;
      Term s;
      if (a.is_var() && b.is_var()) {
        if (a == b) continue;
        const bool a_greater = a.name() > b.name();
        v = a_greater ? a.name() : b.name();
        s = a_greater ? b : a;
      } else if (a.is_var() && !occurs_var(b, a.name())) {
        v = a.name();
        s = b;
      } else if (b.is_var() && !occurs_var(a, b.name())) {
        v = b.name();
        s = a;
      } else {
        continue;
      }
      const Substitution step{{v, s}};
      Clause next;
      for (std::size_t j = 0; j < lits.size(); ++j) {
        if (j != i) next.push_back(substitute(lits[j], step));
      }
      for (auto& [_, term] : composed) term = substitute(term, step);
      out.notes.push_back(v + " := " + to_string(s));
      lits = std::move(next);
      again = true;
      break;
    }
  }

  // Literals the substitutions made ground are evaluated.
  if (!out.notes.empty()) {
    const Evaluator ev(world);
    for (auto& l : lits) {
      if (!l.is_app() || !free_vars(l).empty()) continue;
      try {
        l = Term::quote(ev.eval(l, {}));
      } catch (const Error&) {
      }
    }
    cleaned = clean_literals(lits);
    if (!cleaned) {
      out.kind = SimplifyOutcome::Kind::kProved;
      out.notes.clear();
      return out;
    }
    lits = std::move(*cleaned);
  }

  std::vector<Clause> children;
  for (auto& c : clausify_literals(lits)) {
    if (auto cc = clean_literals(c)) children.push_back(std::move(*cc));
  }
  if (children.empty()) {
    out.kind = SimplifyOutcome::Kind::kProved;
    return out;
  }
  if (children.size() == 1 && children[0] == clause) return out;

  out.kind = SimplifyOutcome::Kind::kChildren;
  for (auto& c : children) {
    const std::vector<std::string> cvars = clause_vars(c);
    auto present = [&](const std::string& v) {
      return std::find(cvars.begin(), cvars.end(), v) != cvars.end();
    };
    std::vector<VarMapping> map;
    for (const auto& p : parent_vars) {
      const Term& term = composed.at(p);
      if (term.is_var() && !present(term.name())) {
        map.push_back({p, std::nullopt});
      } else {
        map.push_back({p, term});
      }
    }
    out.var_maps.push_back(std::move(map));
    out.children.push_back(std::move(c));
  }
  return out;
}

}  // namespace sedan
