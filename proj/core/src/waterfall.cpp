#include "sedan/waterfall.hpp"

#include <algorithm>
#include <set>

#include "sedan/datadef.hpp"
#include "sedan/error.hpp"
#include "sedan/eval.hpp"
#include "sedan/processes.hpp"
#include "sedan/sampling.hpp"
#include "sedan/simplify.hpp"

namespace sedan {

std::string GoalId::str() const {
  switch (primes) {
    case 0:
      return base;
    case 1:
      return base + "'";
    case 2:
      return base + "''";
    case 3:
      return base + "'''";
    default:
      return base + "'" + std::to_string(primes) + "'";
  }
}

GoalId GoalId::primed() const { return {base, primes + 1}; }

GoalId GoalId::subgoal(std::size_t k) const {
  if (base == "Goal") return {"Subgoal " + std::to_string(k), 0};
  return {base + "." + std::to_string(k), 0};
}

std::string_view to_string(GoalStatus s) {
  switch (s) {
    case GoalStatus::kProved:
      return "proved";
    case GoalStatus::kReplaced:
      return "replaced";
    case GoalStatus::kCheckpoint:
      return "checkpoint";
    case GoalStatus::kBudget:
      return "pooled-over-budget";
  }
  return "?";
}

std::string_view to_string(LiftStatus s) {
  switch (s) {
    case LiftStatus::kVerified:
      return "verified";
    case LiftStatus::kSpurious:
      return "spurious";
    case LiftStatus::kSubgoalLocal:
      return "subgoal-local";
  }
  return "?";
}

namespace {

struct Pending {
  GoalId id;
  Clause clause;
  HintSettings parent_settings;
  bool has_parent = false;
};

HintSettings goal_settings(const Pending& p, const std::vector<UserHint>& hints,
                           const WaterfallConfig& cfg) {
  HintSettings s = p.has_parent ? inherited_settings(p.parent_settings) : HintSettings{};
  const HintSettings user = select_hints(p.id.str(), hints);
  s.do_not.insert(user.do_not.begin(), user.do_not.end());
  if (user.trials) s.trials = user.trials;
  if (user.backtrack) s.backtrack = user.backtrack;
  s.replace = s.replace || user.replace;
  std::vector<OverrideHint> overrides;
  if (cfg.backtrack) overrides.push_back(testing_override());
  return fold_override_hints(std::move(s), overrides);
}

struct Candidate {
  std::string process;
  std::vector<Clause> children;
  std::vector<std::vector<VarMapping>> var_maps;
  std::vector<std::map<std::string, Term>> forward_maps;
  std::vector<TypeAlist> type_maps;
  bool liftable = true;
  std::vector<std::string> notes;
};

Candidate from_step(const std::string& process, ProcessStep step) {
  Candidate c;
  c.process = process;
  c.children.push_back(std::move(step.child));
  c.var_maps.push_back(std::move(step.var_map));
  c.forward_maps.push_back(std::move(step.forward_map));
  c.type_maps.push_back(std::move(step.type_map));
  c.liftable = step.liftable;
  c.notes.push_back(std::move(step.note));
  return c;
}

std::string binding_key(const Binding& b) {
  std::string k;
  for (const auto& [v, val] : b) k += v + "=" + to_string(val) + ";";
  return k;
}

void test_checkpoint(ProofResult& result, CheckpointResult& cp, const GoalRecord& goal,
                     const World& world, const WaterfallConfig& cfg,
                     std::set<std::string>& seen) {
  TestConfig tc = cfg.test;
  tc.seed = mix_seed(cfg.test.seed, cp.goal_id);
  if (goal.settings.trials) tc.trials = *goal.settings.trials;
  cp.report = run_trials(cp.clause, cp.alist, tc, world, cp.goal_id);
  const Evaluator ev(world);
  auto falsifies = [&](const Binding& b) {
    try {
      return ev.eval(result.conjecture, b).is_nil();
    } catch (const Error&) {
      return false;
    }
  };
  for (std::size_t i = 0; i < cp.report->counterexamples.size(); ++i) {
    LiftedCounterexample lc;
    lc.local = cp.report->counterexamples[i];
    lc.lift = result.history.lift(cp.goal_id, lc.local, world);
    if (!lc.lift.ok) {
      lc.status = LiftStatus::kSubgoalLocal;
      lc.note = lc.lift.failure;
      cp.lifted.push_back(std::move(lc));
      continue;
    }
    try {
      lc.status = ev.eval(result.conjecture, lc.lift.binding).is_nil() ? LiftStatus::kVerified
                                                                       : LiftStatus::kSpurious;
      if (lc.status == LiftStatus::kSpurious) {
        lc.note = "lifted binding does not falsify the conjecture";
      }
    } catch (const Error& e) {
      lc.status = LiftStatus::kSpurious;
      lc.note = std::string("lifted binding errors: ") + e.what();
    }
    if (lc.status == LiftStatus::kVerified && !lc.lift.dont_care.empty()) {
      Rng rng(mix_seed(tc.seed, "dont-care:" + std::to_string(i)));
      for (std::size_t k = 0; k < cfg.spot_checks && lc.dont_care_checked; ++k) {
        const LiftResult alt = result.history.lift(
            cp.goal_id, lc.local, world,
            [&](const std::string&) { return sample(world, "all", rng, Distribution::kGeometric); });
        if (!alt.ok || !falsifies(alt.binding)) lc.dont_care_checked = false;
      }
      if (!lc.dont_care_checked) {
        lc.note = "some don't-care alternatives do not falsify; shown with concrete values";
        lc.lift.dont_care.clear();
      }
    }
    if (lc.status == LiftStatus::kVerified && seen.insert(binding_key(lc.lift.binding)).second) {
      result.counterexamples.push_back(lc.lift);
    }
    cp.lifted.push_back(std::move(lc));
  }
}

}  // namespace

ProofResult run_waterfall(const Term& conjecture, const World& world,
                          const std::vector<UserHint>& hints, const WaterfallConfig& cfg) {
  ProofResult result;
  result.conjecture = conjecture;
  result.seed = cfg.test.seed;
  const Clause top = conjecture_clause(conjecture);
  result.top_vars = clause_vars(top);

  HistoryNode root;
  root.id = "Goal";
  root.clause = top;
  result.history.record(root, world);

  std::vector<Pending> stack;
  stack.push_back({GoalId{}, top, {}, false});
  std::size_t processed = 0;

  while (!stack.empty()) {
    Pending p = std::move(stack.back());
    stack.pop_back();
    const std::string id = p.id.str();
    const HistoryNode* node = result.history.find(id);
    GoalRecord rec;
    rec.id = id;
    rec.clause = p.clause;
    if (node) {
      rec.parent = node->parent;
      rec.process = node->process;
    }
    rec.settings = goal_settings(p, hints, cfg);

    if (processed++ >= cfg.goal_budget) {
      rec.status = GoalStatus::kBudget;
      result.goals.push_back(std::move(rec));
      continue;
    }

    bool done = false;
    while (!done) {
      std::optional<Candidate> cand;
      bool proved = false;
      for (std::string_view proc : kProcessNames) {
        if (rec.settings.do_not.count(std::string(proc))) continue;
        if (proc == "simplify") {
          SimplifyOutcome out = simplify_clause(p.clause, world);
          if (!out.diagnostic.empty()) result.diagnostics.push_back(id + ": " + out.diagnostic);
          if (out.kind == SimplifyOutcome::Kind::kProved) {
            proved = true;
            break;
          }
          if (out.kind == SimplifyOutcome::Kind::kChildren) {
            Candidate c;
            c.process = "simplify";
            c.children = std::move(out.children);
            c.var_maps = std::move(out.var_maps);
            c.notes = std::move(out.notes);
            for (const auto& child : c.children) {
              std::map<std::string, Term> fwd;
              for (const auto& v : clause_vars(child)) fwd.emplace(v, Term::var(v));
              c.forward_maps.push_back(std::move(fwd));
              c.type_maps.emplace_back();
            }
            cand = std::move(c);
            break;
          }
        } else if (proc == "eliminate-destructors") {
          const TypeAlist alist = result.history.accumulated_type_alist(id, world);
          if (auto step = eliminate_destructors(p.clause, alist, world)) {
            cand = from_step("eliminate-destructors", std::move(*step));
            break;
          }
        } else if (auto step = generalize_clause(p.clause)) {
          cand = from_step("generalize", std::move(*step));
          break;
        }
      }

      if (proved) {
        rec.status = GoalStatus::kProved;
        ProcessLogEntry e;
        e.goal_id = id;
        e.process = "simplify";
        e.parent = p.clause;
        e.parent_alist = result.history.accumulated_type_alist(id, world);
        result.log.push_back(std::move(e));
        done = true;
        break;
      }
      if (!cand) {
        rec.status = GoalStatus::kCheckpoint;
        done = true;
        break;
      }

      ProcessLogEntry entry;
      entry.goal_id = id;
      entry.process = cand->process;
      entry.parent = p.clause;
      entry.parent_alist = result.history.accumulated_type_alist(id, world);
      entry.children = cand->children;
      entry.forward_maps = cand->forward_maps;
      entry.notes = cand->notes;
      const std::size_t n = cand->children.size();
      for (std::size_t i = 0; i < n; ++i) {
        const GoalId cid = n == 1 ? p.id.primed() : p.id.subgoal(n - i);
        entry.child_ids.push_back(cid.str());
        HistoryNode child;
        child.id = cid.str();
        child.parent = id;
        child.process = cand->process;
        child.clause = cand->children[i];
        child.var_map = cand->var_maps[i];
        child.type_map = cand->type_maps[i];
        child.forward_map = cand->forward_maps[i];
        child.liftable = cand->liftable;
        result.history.record(std::move(child), world);
      }

      if (rec.settings.backtrack) {
        BacktrackContext ctx;
        ctx.processor = cand->process;
        ctx.goal_id = id;
        ctx.goal = &p.clause;
        ctx.children = &cand->children;
        ctx.first_child_id = entry.child_ids.front();
        ctx.first_child_alist = result.history.accumulated_type_alist(ctx.first_child_id, world);
        ctx.settings = &rec.settings;
        ctx.world = &world;
        ctx.config = cfg.test;
        std::string diag;
        BacktrackOutcome out = apply_backtrack(*rec.settings.backtrack, ctx, &diag);
        if (!diag.empty()) result.diagnostics.push_back(id + ": " + diag);
        entry.backtrack_report = std::move(out.report);
        if (out.redo) {
          for (const auto& cid : entry.child_ids) result.history.erase(cid);
          entry.kept = false;
          entry.discard_reason = out.reason.empty() ? "backtrack handler requested a redo"
                                                    : "counterexample " + out.reason;
          entry.redo_do_not.assign(out.settings.do_not.begin(), out.settings.do_not.end());
          rec.settings = std::move(out.settings);
          ++rec.redos;
          result.log.push_back(std::move(entry));
          continue;
        }
      }

      for (std::size_t i = n; i-- > 0;) {
        stack.push_back({n == 1 ? p.id.primed() : p.id.subgoal(n - i), cand->children[i],
                         rec.settings, true});
      }
      result.log.push_back(std::move(entry));
      rec.status = GoalStatus::kReplaced;
      done = true;
    }
    result.goals.push_back(std::move(rec));
  }

  std::set<std::string> seen;
  for (const auto& g : result.goals) {
    if (g.status != GoalStatus::kCheckpoint && g.status != GoalStatus::kBudget) continue;
    CheckpointResult cp;
    cp.goal_id = g.id;
    cp.clause = g.clause;
    cp.alist = result.history.accumulated_type_alist(g.id, world);
    if (cfg.test_checkpoints) test_checkpoint(result, cp, g, world, cfg, seen);
    result.checkpoints.push_back(std::move(cp));
  }
  if (std::any_of(result.goals.begin(), result.goals.end(),
                  [](const GoalRecord& g) { return g.status == GoalStatus::kBudget; })) {
    result.diagnostics.push_back("goal budget of " + std::to_string(cfg.goal_budget) +
                                 " reached; remaining goals were pooled unprocessed");
  }
  result.proved = result.checkpoints.empty();
  result.falsified = !result.counterexamples.empty();
  return result;
}

std::string render_proof(const ProofResult& r, const World& world, std::size_t display_cap) {
  std::string out;
  for (const auto& e : r.log) {
    if (e.kept) continue;
    out += "Discarded " + e.process + " on \"" + e.goal_id + "\" (" + e.discard_reason +
           "); retrying with :do-not (";
    for (std::size_t i = 0; i < e.redo_do_not.size(); ++i) {
      out += (i ? " " : "") + e.redo_do_not[i];
    }
    out += ").\n\n";
  }
  for (const auto& cp : r.checkpoints) {
    out += cp.goal_id + "\n\n" + to_string(cp.clause, PrintStyle::kReport) + "\n\n";
    if (!cp.report) continue;
    RenderOptions opt;
    opt.display_cap = display_cap;
    std::vector<std::string> verified;
    std::vector<std::string> local;
    std::vector<std::string> spurious;
    for (const auto& lc : cp.lifted) {
      const std::string local_str =
          binding_to_string(lc.local, PrintStyle::kReport, cp.report->vars);
      switch (lc.status) {
        case LiftStatus::kVerified:
          verified.push_back(lifted_to_string(lc.lift, r.top_vars));
          break;
        case LiftStatus::kSubgoalLocal:
          local.push_back(local_str + " [" + lc.note + "]");
          break;
        case LiftStatus::kSpurious:
          spurious.push_back(local_str + " [" + lc.note + "]");
          break;
      }
    }
    opt.counterexample_lines = verified;
    opt.extra_sections.emplace_back("Counterexamples to this subgoal that do not lift:",
                                    local);
    opt.extra_sections.emplace_back("Subgoal counterexamples whose lifts were rejected:",
                                    spurious);
    out += render_report(*cp.report, world, opt) + "\n";
  }
  if (r.proved) {
    out += "Q.E.D.\n";
  } else if (r.falsified) {
    out += "The conjecture is false.\n";
  } else {
    out += "Proof failed with " + std::to_string(r.checkpoints.size()) +
           (r.checkpoints.size() == 1 ? " checkpoint" : " checkpoints") +
           " pushed to the pool (no induction).\n";
  }
  return out;
}

}  // namespace sedan
