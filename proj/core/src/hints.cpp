#include "sedan/hints.hpp"

#include <algorithm>
#include <cctype>

#include "sedan/error.hpp"

namespace sedan {

bool is_process_name(std::string_view name) {
  return std::find(std::begin(kProcessNames), std::end(kProcessNames), name) !=
         std::end(kProcessNames);
}

namespace {

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

}  // namespace

HintSettings select_hints(std::string_view goal_id, const std::vector<UserHint>& hints) {
  for (const auto& h : hints) {
    for (const auto& p : h.settings.do_not) {
      if (!is_process_name(p)) throw Error("hint for " + h.goal_id + " names unknown process " + p);
    }
  }
  for (const auto& h : hints) {
    if (iequals(h.goal_id, goal_id)) return h.settings;
  }
  return {};
}

HintSettings fold_override_hints(HintSettings settings,
                                 const std::vector<OverrideHint>& overrides) {
  for (const auto& o : overrides) settings = o.transform(settings);
  return settings;
}

OverrideHint testing_override() {
  return {"testing", [](const HintSettings& s) {
            HintSettings out = s;
            out.backtrack = "test-gen-checkpoint";
            out.replace = true;
            return out;
          }};
}

HintSettings inherited_settings(const HintSettings& parent) {
  HintSettings out;
  out.do_not = parent.do_not;
  out.trials = parent.trials;
  if (parent.replace) {
    out.backtrack = parent.backtrack;
    out.replace = true;
  }
  return out;
}

std::optional<HintSettings> test_gen_checkpoint(const BacktrackContext& ctx,
                                                BacktrackOutcome& outcome) {
  if (ctx.processor != "generalize") return std::nullopt;
  if (!ctx.children || ctx.children->empty() || !ctx.world) return std::nullopt;
  TestConfig cfg = ctx.config;
  cfg.seed = mix_seed(ctx.config.seed, "backtrack:" + ctx.first_child_id);
  if (ctx.settings && ctx.settings->trials) cfg.trials = *ctx.settings->trials;
  TestReport report = run_trials(ctx.children->front(), ctx.first_child_alist, cfg, *ctx.world,
                                 ctx.first_child_id);
  const bool refuted = report.counterexample_count > 0;
  if (refuted) {
    outcome.reason = binding_to_string(report.counterexamples.front(), PrintStyle::kReport,
                                       report.vars);
  }
  outcome.report = std::move(report);
  if (!refuted) return std::nullopt;
  HintSettings s;
  s.do_not = {"generalize"};
  return s;
}

namespace {

struct Registered {
  std::string_view name;
  BacktrackHandler handler;
};

const std::vector<Registered>& registry() {
  static const std::vector<Registered> r = {
      {"test-gen-checkpoint", test_gen_checkpoint},
      {"none", [](const BacktrackContext&, BacktrackOutcome&) -> std::optional<HintSettings> {
         return std::nullopt;
       }},
  };
  return r;
}

}  // namespace

std::vector<std::string> backtrack_handler_names() {
  std::vector<std::string> out;
  for (const auto& r : registry()) out.emplace_back(r.name);
  return out;
}

bool is_backtrack_handler(std::string_view name) {
  const auto& r = registry();
  return std::any_of(r.begin(), r.end(), [&](const Registered& x) { return x.name == name; });
}

BacktrackOutcome apply_backtrack(std::string_view handler, const BacktrackContext& ctx,
                                 std::string* diagnostic) {
  BacktrackOutcome out;
  const auto& r = registry();
  auto it = std::find_if(r.begin(), r.end(), [&](const Registered& x) { return x.name == handler; });
  if (it == r.end()) {
    if (diagnostic) *diagnostic = "unknown backtrack handler " + std::string(handler);
    return out;
  }
  std::optional<HintSettings> extra;
  try {
    extra = it->handler(ctx, out);
  } catch (const std::exception& e) {
    if (diagnostic) *diagnostic = std::string("backtrack handler failed: ") + e.what();
    return out;
  }
  if (!extra) return out;
  HintSettings merged = ctx.settings ? *ctx.settings : HintSettings{};
  const std::size_t before = merged.do_not.size();
  merged.do_not.insert(extra->do_not.begin(), extra->do_not.end());
  if (extra->trials) merged.trials = extra->trials;
  if (merged.do_not.size() == before) {
    if (diagnostic) *diagnostic = "backtrack redo would not change the settings; kept";
    return out;
  }
  out.redo = true;
  out.settings = std::move(merged);
  return out;
}

}  // namespace sedan
