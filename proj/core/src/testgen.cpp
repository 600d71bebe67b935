#include "sedan/testgen.hpp"

#include <algorithm>
#include <chrono>
#include <unordered_map>
#include <unordered_set>

#include "sedan/error.hpp"

namespace sedan {

const TypeAlistEntry* find_entry(const TypeAlist& alist, std::string_view var) {
  for (const auto& e : alist) {
    if (e.var == var) return &e;
  }
  return nullptr;
}

void add_restriction(TypeAlist& alist, const std::string& var, const Restriction& r) {
  for (auto& e : alist) {
    if (e.var != var) continue;
    if (r.is_all()) return;
    if (std::find(e.restrictions.begin(), e.restrictions.end(), r) != e.restrictions.end()) {
      return;
    }
    if (e.restrictions.size() == 1 && e.restrictions[0].is_all()) e.restrictions.clear();
    e.restrictions.push_back(r);
    return;
  }
  alist.push_back({var, {r}});
}

std::string to_string(const TypeAlist& alist, const World& world, PrintStyle style) {
  std::string out = "(";
  for (std::size_t i = 0; i < alist.size(); ++i) {
    if (i > 0) out += ' ';
    const TypeSelection sel = minimal_type(world, alist[i].restrictions);
    out += "(" + to_string(Value::symbol(alist[i].var), style) + " . " +
           to_string(sel.primary, style) + ")";
  }
  return out + ")";
}

TypeAlist complete_alist(const Clause& clause, TypeAlist alist) {
  TypeAlist out;
  for (const auto& v : clause_vars(clause)) {
    const TypeAlistEntry* e = find_entry(alist, v);
    out.push_back(e ? *e : TypeAlistEntry{v, {Restriction::of_type("all")}});
  }
  return out;
}

TypeAlist extract_restrictions(const Clause& clause, const World& world) {
  TypeAlist alist;
  for (std::size_t i = 0; i + 1 < clause.size(); ++i) {
    const Term& lit = clause[i];
    if (!lit.is_app("not")) continue;
    const Term& h = lit.arg(0);
    if (!h.is_app()) continue;
    if (h.args().size() == 1 && h.arg(0).is_var()) {
      if (const TypeEntry* t = world.types().by_recognizer(h.name())) {
        add_restriction(alist, h.arg(0).name(), Restriction::of_type(t->name));
      }
    } else if (h.is_app("equal")) {
      if (h.arg(0).is_var() && h.arg(1).is_quote()) {
        add_restriction(alist, h.arg(0).name(), Restriction::of_value(h.arg(1).value()));
      } else if (h.arg(1).is_var() && h.arg(0).is_quote()) {
        add_restriction(alist, h.arg(1).name(), Restriction::of_value(h.arg(0).value()));
      }
    }
  }
  return complete_alist(clause, std::move(alist));
}

Clause conjecture_clause(const Term& conjecture) {
  Clause hyps;
  Term t = conjecture;
  auto add_hyps = [&](const Term& h, auto& self) -> void {
    if (h.is_app("and")) {
      self(h.arg(0), self);
      self(h.arg(1), self);
    } else if (!h.is_t()) {
      hyps.push_back(negate(h));
    }
  };
  while (t.is_app("implies")) {
    add_hyps(t.arg(0), add_hyps);
    t = t.arg(1);
  }
  hyps.push_back(t);
  return hyps;
}

// ---------------------------------------------------------------------------

namespace {

std::uint64_t saturating_pow(std::uint64_t base, std::size_t k) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (base != 0 && out > UINT64_MAX / base) return UINT64_MAX;
    out *= base;
  }
  return out;
}

}  // namespace

BindingSampler::BindingSampler(const World& world, const TypeAlist& alist,
                               const TestConfig& config)
    : world_(world), config_(config), rng_(config.seed) {
  for (const auto& e : alist) {
    vars_.push_back(e.var);
    selections_.push_back(minimal_type(world, e.restrictions));
  }
  const std::uint64_t space = saturating_pow(config.exhaustive_bound, vars_.size());
  const std::size_t cap = config.trial_cap;
  switch (config.mode) {
    case TestMode::kRandom:
      trials_ = std::min(config.trials, cap);
      break;
    case TestMode::kExhaustive:
      exhaustive_ = true;
      trials_ = static_cast<std::size_t>(std::min<std::uint64_t>(space, cap));
      break;
    case TestMode::kMixed:
      exhaustive_ = space <= config.trials;
      trials_ = exhaustive_ ? static_cast<std::size_t>(space) : std::min(config.trials, cap);
      break;
  }
}

std::optional<Binding> BindingSampler::next(std::size_t index) {
  Binding b;
  std::uint64_t rest = index;
  bool rejected = false;
  for (std::size_t v = 0; v < vars_.size(); ++v) {
    std::uint64_t idx;
    if (exhaustive_) {
      idx = rest % config_.exhaustive_bound;
      rest /= config_.exhaustive_bound;
    } else {
      idx = draw_index(rng_, config_.dist, config_.uniform_bits);
    }
    const TypeSelection& sel = selections_[v];
    Value value = enumerate(world_, sel.primary, idx);
    for (const auto& r : sel.residual) {
      if (!satisfies(world_, r, value)) rejected = true;
    }
    b.emplace(vars_[v], std::move(value));
  }
  if (rejected) return std::nullopt;
  return b;
}

TestReport run_trials(const Clause& clause, const TypeAlist& alist_in, const TestConfig& config,
                      const World& world, std::string goal_id) {
  const auto start = std::chrono::steady_clock::now();
  TestReport r;
  r.goal_id = std::move(goal_id);
  r.alist = complete_alist(clause, alist_in);
  for (const auto& e : r.alist) r.vars.push_back(e.var);
  r.seed = config.seed;
  r.dist = config.dist;

  BindingSampler sampler(world, r.alist, config);
  r.mode = sampler.exhaustive() ? TestMode::kExhaustive : TestMode::kRandom;
  r.trials = sampler.trial_count();

  const std::vector<Term> hyps = clause_hypotheses(clause);
  const Term concl = clause_conclusion(clause);
  const Evaluator ev(world);
  // Verdict per unique satisfying assignment: 0 counterexample, 1 witness,
  // 2 error.
  std::unordered_map<std::string, int> seen;

  for (std::size_t i = 0; i < r.trials; ++i) {
    std::optional<Binding> b = sampler.next(i);
    if (!b) {
      ++r.vacuous;
      continue;
    }
    int verdict = 2;
    try {
      bool ok = true;
      for (const auto& h : hyps) {
        if (ev.eval(h, *b).is_nil()) {
          ok = false;
          break;
        }
      }
      if (!ok) {
        ++r.vacuous;
        continue;
      }
      ++r.satisfied;
      std::string key = binding_to_string(*b, PrintStyle::kCanonical, r.vars);
      auto [it, inserted] = seen.emplace(std::move(key), 2);
      if (!inserted) {
        verdict = it->second;
      } else {
        ++r.unique_satisfied;
        verdict = ev.eval(concl, *b).is_nil() ? 0 : 1;
        it->second = verdict;
        if (verdict == 0) {
          ++r.counterexample_count;
          if (r.counterexamples.size() < kStoredCounterexamples) r.counterexamples.push_back(*b);
        } else {
          ++r.witness_count;
          if (r.witnesses.size() < config.display_cap) r.witnesses.push_back(*b);
        }
      }
    } catch (const Error& e) {
      if (r.errors.size() < config.display_cap) r.errors.emplace_back(e.what());
    }
    if (verdict == 0) ++r.counterexample_trials;
    if (verdict == 1) ++r.witness_trials;
    if (verdict == 2) ++r.erroring;
  }
  r.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

TestReport top_level_test(const Term& conjecture, const TestConfig& config, const World& world) {
  const Clause clause = conjecture_clause(conjecture);
  return run_trials(clause, extract_restrictions(clause, world), config, world);
}

// ---------------------------------------------------------------------------

namespace {

std::string count_phrase(std::size_t n, const char* singular, const char* plural) {
  if (n == 0) return std::string("none were ") + plural;
  if (n == 1) return std::string("1 was ") + singular;
  return std::to_string(n) + " were " + plural;
}

}  // namespace

std::string render_report(const TestReport& r, const World& world, const RenderOptions& opt) {
  std::string out = r.mode == TestMode::kExhaustive ? "Exhaustive testing" : "Random testing";
  if (!r.goal_id.empty()) out += " \"" + r.goal_id + "\"";
  out += " with type alist " + to_string(r.alist, world, PrintStyle::kReport) + "\n\n";

  std::vector<std::string> ce_lines;
  if (opt.counterexample_lines) {
    ce_lines = *opt.counterexample_lines;
  } else {
    for (const auto& b : r.counterexamples) {
      ce_lines.push_back(binding_to_string(b, PrintStyle::kReport, r.vars));
    }
  }
  if (ce_lines.size() > opt.display_cap) ce_lines.resize(opt.display_cap);
  if (!ce_lines.empty()) {
    out += "We falsified the conjecture. Here are counterexamples:\n";
    for (const auto& l : ce_lines) out += " -- " + l + "\n";
    out += "\n";
  }
  for (const auto& [title, lines] : opt.extra_sections) {
    if (lines.empty()) continue;
    out += title + "\n";
    for (std::size_t i = 0; i < lines.size() && i < opt.display_cap; ++i) {
      out += " -- " + lines[i] + "\n";
    }
    out += "\n";
  }
  if (!r.witnesses.empty()) {
    out += "Cases in which the conjecture is true include:\n";
    for (std::size_t i = 0; i < r.witnesses.size() && i < opt.display_cap; ++i) {
      out += " -- " + binding_to_string(r.witnesses[i], PrintStyle::kReport, r.vars) + "\n";
    }
    out += "\n";
  }
  const char* kind = r.mode == TestMode::kExhaustive ? "exhaustive" : "random";
  out += "We tried " + std::to_string(r.trials) + " " + kind +
         (r.trials == 1 ? " trial, " : " trials, ");
  if (r.satisfied == 0) {
    out += "none of which satisfied the hypotheses.\n";
  } else {
    out += std::to_string(r.satisfied) + " (" + std::to_string(r.unique_satisfied) +
           " unique) of which satisfied the hypotheses.\n";
    out += "Of these, " + count_phrase(r.counterexample_count, "a counterexample", "counterexamples") +
           " and " + count_phrase(r.witness_count, "a witness", "witnesses") + ".\n";
  }
  if (r.erroring > 0) {
    out += std::to_string(r.erroring) + " trial(s) raised evaluation errors";
    if (!r.errors.empty()) out += ", e.g. " + r.errors.front();
    out += ".\n";
  }
  return out;
}

}  // namespace sedan
