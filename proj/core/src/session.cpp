#include "sedan/session.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sedan/datadef.hpp"
#include "sedan/eval.hpp"
#include "sedan/sampling.hpp"

namespace sedan {

std::string_view to_string(FormStatus s) {
  switch (s) {
    case FormStatus::kAdmitted:
      return "admitted";
    case FormStatus::kProved:
      return "proved";
    case FormStatus::kFailed:
      return "failed";
    case FormStatus::kFalsified:
      return "falsified";
    case FormStatus::kPassed:
      return "passed";
    case FormStatus::kError:
      return "error";
  }
  return "?";
}

namespace {

constexpr std::size_t kMaxIncludeDepth = 16;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Session {
 public:
  explicit Session(const SessionFlags& flags) : flags_(flags), rng_(flags.test.seed) {
    out_.flags = flags;
    out_.world.test_defaults = flags.test;
    out_.world.settings.max_rewrite_depth = flags.max_rewrite_depth;
  }

  void run(std::string_view text, const std::string& base_dir, const std::string& file,
           std::size_t depth) {
    std::vector<Form> forms;
    try {
      forms = parse_forms(text);
    } catch (const ParseError& e) {
      stop(file, e.pos(), std::string("parse error: ") + e.what());
      return;
    }
    for (const auto& f : forms) {
      if (out_.error) return;
      if (f.kind == Form::Kind::kInclude) {
        include(f, base_dir, file, depth);
        continue;
      }
      FormOutcome fo;
      fo.index = out_.forms.size();
      fo.file = file;
      fo.pos = f.source.pos;
      fo.kind = f.kind;
      fo.label = f.name.empty() ? to_string(f.source.items[1]) : f.name;
      try {
        admit(f, fo);
      } catch (const Error& e) {
        fo.status = FormStatus::kError;
        fo.message = e.what();
      }
      const bool failed = fo.status == FormStatus::kError;
      out_.forms.push_back(std::move(fo));
      if (failed) {
        const auto& last = out_.forms.back();
        out_.error = last.file + ":" + std::to_string(last.pos.line) + ":" +
                     std::to_string(last.pos.column) + ": form " + std::to_string(last.index) +
                     ": " + last.message;
        return;
      }
    }
  }

  SessionOutcome finish() {
    bool falsified = false;
    for (const auto& f : out_.forms) falsified = falsified || f.status == FormStatus::kFalsified;
    out_.exit_code = out_.error ? 2 : falsified ? 1 : 0;
    return std::move(out_);
  }

 private:
  void stop(const std::string& file, SourcePos pos, const std::string& msg) {
    out_.error = file + ":" + std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " +
                 msg;
  }

  void include(const Form& f, const std::string& base_dir, const std::string& file,
               std::size_t depth) {
    if (depth >= kMaxIncludeDepth) {
      stop(file, f.source.pos, "include nesting too deep");
      return;
    }
    const std::filesystem::path p = std::filesystem::path(base_dir) / f.path;
    std::string text;
    try {
      text = read_file(p.string());
    } catch (const Error& e) {
      stop(file, f.source.pos, e.what());
      return;
    }
    run(text, p.parent_path().string(), p.lexically_normal().string(), depth + 1);
  }

  bool deterministic(Form::Kind k) const {
    return flags_.deterministic.value_or(k == Form::Kind::kThm);
  }

  std::uint64_t form_seed(Form::Kind k) {
    const std::uint64_t drawn = rng_.next();
    return deterministic(k) ? out_.world.test_defaults.seed : drawn;
  }

  void admit(const Form& f, FormOutcome& fo) {
    World& w = out_.world;
    switch (f.kind) {
      case Form::Kind::kDefun:
        w = define_function(w, f.name, f.formals, f.body);
        return;
      case Form::Kind::kDefdata:
        w = register_defdata(w, f.members);
        return;
      case Form::Kind::kDefdataSubtype:
        w = add_subtype_edge(w, f.sub, f.super, f.trust);
        return;
      case Form::Kind::kDefrule: {
        World next = define_rule(w, f.name, f.formula, f.enabled);
        if (!f.trust) check_rule(f, w);
        w = std::move(next);
        return;
      }
      case Form::Kind::kSetTesting:
        set_testing(f);
        return;
      case Form::Kind::kTest: {
        check_term(w, f.formula, nullptr);
        TestConfig cfg = w.test_defaults;
        if (f.trials) cfg.trials = *f.trials;
        cfg.deterministic = deterministic(f.kind);
        cfg.seed = form_seed(f.kind);
        fo.seed = cfg.seed;
        TestReport r = top_level_test(f.formula, cfg, w);
        fo.status = r.counterexample_count > 0 ? FormStatus::kFalsified : FormStatus::kPassed;
        RenderOptions opt;
        opt.display_cap = cfg.display_cap;
        fo.text = render_report(r, w, opt);
        fo.test = std::move(r);
        return;
      }
      case Form::Kind::kThm: {
        check_term(w, f.formula, nullptr);
        WaterfallConfig cfg;
        cfg.test = w.test_defaults;
        if (f.trials) cfg.test.trials = *f.trials;
        cfg.test.deterministic = deterministic(f.kind);
        cfg.test.seed = form_seed(f.kind);
        cfg.backtrack = flags_.backtrack;
        fo.seed = cfg.test.seed;
        ProofResult pr = run_waterfall(f.formula, w, f.hints, cfg);
        fo.status = pr.proved      ? FormStatus::kProved
                    : pr.falsified ? FormStatus::kFalsified
                                   : FormStatus::kFailed;
        fo.text = render_proof(pr, w, cfg.test.display_cap);
        fo.proof = std::move(pr);
        return;
      }
      case Form::Kind::kInclude:
        return;
    }
  }

  // Rules are checked by testing unless trusted: a counterexample to the
  // rule's formula rejects it.
  void check_rule(const Form& f, const World& w) {
    TestConfig cfg = w.test_defaults;
    cfg.trials = std::max<std::size_t>(cfg.trials, 1000);
    cfg.seed = mix_seed(w.test_defaults.seed, "defrule:" + f.name);
    const TestReport r = top_level_test(f.formula, cfg, w);
    if (r.counterexample_count > 0) {
      throw AdmissionError("rule " + f.name + " is falsified by " +
                           binding_to_string(r.counterexamples.front(), PrintStyle::kCanonical,
                                             r.vars));
    }
  }

  void set_testing(const Form& f) {
    World& w = out_.world;
    for (const auto& s : f.settings) {
      if (s.key == "mode") {
        w.test_defaults.mode = *parse_test_mode(lowercase(s.value.symbol_name()));
        continue;
      }
      if (s.key == "dist") {
        w.test_defaults.dist = *parse_distribution(lowercase(s.value.symbol_name()));
        continue;
      }
      const auto n =
          boost::multiprecision::numerator(s.value.as_rational()).convert_to<std::uint64_t>();
      if (s.key == "trials") {
        w.test_defaults.trials = n;
      } else if (s.key == "seed") {
        w.test_defaults.seed = n;
        rng_ = Rng(n);
      } else if (s.key == "edge-evidence") {
        w.settings.edge_evidence = n;
      } else if (s.key == "uniform-bits") {
        if (n > 64) throw AdmissionError(":uniform-bits must be at most 64");
        w.test_defaults.uniform_bits = static_cast<unsigned>(n);
      } else if (s.key == "exhaustive-bound") {
        if (n == 0) throw AdmissionError(":exhaustive-bound must be positive");
        w.test_defaults.exhaustive_bound = n;
      } else if (s.key == "max-rewrite-depth") {
        w.settings.max_rewrite_depth = n;
      } else if (s.key == "display") {
        w.test_defaults.display_cap = n;
      }
    }
  }

  static std::string lowercase(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
  }

  SessionFlags flags_;
  Rng rng_;
  SessionOutcome out_;
};

using nlohmann::ordered_json;

ordered_json alist_json(const TypeAlist& alist, const World& world) {
  ordered_json out = ordered_json::array();
  for (const auto& e : alist) {
    ordered_json rs = ordered_json::array();
    for (const auto& r : e.restrictions) rs.push_back(to_string(r));
    const TypeSelection sel = minimal_type(world, e.restrictions);
    out.push_back({{"var", e.var}, {"restrictions", rs}, {"sampled_as", to_string(sel.primary)}});
  }
  return out;
}

ordered_json binding_json(const Binding& b) {
  ordered_json out = ordered_json::object();
  for (const auto& [v, val] : b) out[v] = to_string(val);
  return out;
}

ordered_json report_json(const TestReport& r, const World& world) {
  ordered_json ces = ordered_json::array();
  for (const auto& b : r.counterexamples) ces.push_back(binding_json(b));
  ordered_json ws = ordered_json::array();
  for (const auto& b : r.witnesses) ws.push_back(binding_json(b));
  return {{"goal", r.goal_id},
          {"type_alist", alist_json(r.alist, world)},
          {"seed", r.seed},
          {"mode", to_string(r.mode)},
          {"dist", to_string(r.dist)},
          {"trials", r.trials},
          {"satisfied", r.satisfied},
          {"unique_satisfied", r.unique_satisfied},
          {"vacuous", r.vacuous},
          {"erroring", r.erroring},
          {"counterexample_count", r.counterexample_count},
          {"witness_count", r.witness_count},
          {"counterexample_trials", r.counterexample_trials},
          {"witness_trials", r.witness_trials},
          {"counterexamples", ces},
          {"witnesses", ws},
          {"errors", r.errors}};
}

ordered_json clause_json(const Clause& c) {
  ordered_json out = ordered_json::array();
  for (const auto& l : c) out.push_back(to_string(l));
  return out;
}

ordered_json settings_json(const HintSettings& s) {
  ordered_json out = {{"do_not", s.do_not}};
  out["trials"] = s.trials ? ordered_json(*s.trials) : ordered_json(nullptr);
  out["backtrack"] = s.backtrack ? ordered_json(*s.backtrack) : ordered_json(nullptr);
  out["replace"] = s.replace;
  return out;
}

ordered_json lift_json(const LiftResult& l) {
  ordered_json b = ordered_json::object();
  for (const auto& [v, val] : l.binding) b[v] = l.dont_care.count(v) ? "?" : to_string(val);
  return b;
}

ordered_json proof_json(const ProofResult& p, const World& world) {
  ordered_json goals = ordered_json::array();
  for (const auto& g : p.goals) {
    ordered_json j = {{"id", g.id}};
    j["parent"] = g.parent ? ordered_json(*g.parent) : ordered_json(nullptr);
    j["process"] = g.process;
    j["clause"] = clause_json(g.clause);
    j["status"] = to_string(g.status);
    j["settings"] = settings_json(g.settings);
    j["redos"] = g.redos;
    goals.push_back(std::move(j));
  }
  ordered_json log = ordered_json::array();
  ordered_json discarded = ordered_json::array();
  for (const auto& e : p.log) {
    ordered_json fwd = ordered_json::array();
    for (const auto& m : e.forward_maps) {
      ordered_json o = ordered_json::object();
      for (const auto& [v, t] : m) o[v] = to_string(t);
      fwd.push_back(std::move(o));
    }
    ordered_json children = ordered_json::array();
    for (const auto& c : e.children) children.push_back(clause_json(c));
    ordered_json j = {{"goal", e.goal_id},     {"process", e.process},
                      {"kept", e.kept},        {"child_ids", e.child_ids},
                      {"children", children},  {"forward_maps", fwd},
                      {"notes", e.notes}};
    if (!e.kept) {
      j["discard_reason"] = e.discard_reason;
      j["redo_do_not"] = e.redo_do_not;
      discarded.push_back({{"goal", e.goal_id},
                           {"process", e.process},
                           {"reason", e.discard_reason},
                           {"redo_do_not", e.redo_do_not}});
    }
    if (e.backtrack_report) j["backtrack_test"] = report_json(*e.backtrack_report, world);
    log.push_back(std::move(j));
  }
  ordered_json cps = ordered_json::array();
  for (const auto& cp : p.checkpoints) {
    ordered_json j = {{"goal", cp.goal_id},
                      {"clause", clause_json(cp.clause)},
                      {"type_alist", alist_json(cp.alist, world)}};
    j["report"] = cp.report ? report_json(*cp.report, world) : ordered_json(nullptr);
    ordered_json lifted = ordered_json::array();
    for (const auto& lc : cp.lifted) {
      ordered_json l = {{"local", binding_json(lc.local)}, {"status", to_string(lc.status)}};
      l["lifted"] = lc.lift.ok ? lift_json(lc.lift) : ordered_json(nullptr);
      l["note"] = lc.note;
      lifted.push_back(std::move(l));
    }
    j["lifted"] = std::move(lifted);
    cps.push_back(std::move(j));
  }
  ordered_json history = ordered_json::array();
  for (const auto& n : p.history.nodes()) {
    ordered_json j = {{"id", n.id}};
    j["parent"] = n.parent ? ordered_json(*n.parent) : ordered_json(nullptr);
    j["process"] = n.process;
    ordered_json vm = ordered_json::object();
    for (const auto& m : n.var_map) vm[m.var] = m.term ? to_string(*m.term) : "?";
    j["var_map"] = std::move(vm);
    j["type_map"] = alist_json(n.type_map, world);
    j["liftable"] = n.liftable;
    history.push_back(std::move(j));
  }
  ordered_json ces = ordered_json::array();
  for (const auto& l : p.counterexamples) ces.push_back(lift_json(l));
  return {{"proved", p.proved},         {"falsified", p.falsified},
          {"seed", p.seed},             {"goals", goals},
          {"process_log", log},         {"discarded_generalizations", discarded},
          {"checkpoints", cps},         {"counterexamples", ces},
          {"history", history},         {"diagnostics", p.diagnostics}};
}

}  // namespace

SessionOutcome process_text(std::string_view text, const SessionFlags& flags,
                            const std::string& base_dir, const std::string& file) {
  Session s(flags);
  s.run(text, base_dir, file, 0);
  return s.finish();
}

SessionOutcome process_file(const std::string& path, const SessionFlags& flags) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const Error& e) {
    SessionOutcome out;
    out.flags = flags;
    out.error = e.what();
    out.exit_code = 2;
    return out;
  }
  const std::filesystem::path p(path);
  return process_text(text, flags, p.parent_path().empty() ? "." : p.parent_path().string(),
                      path);
}

std::string render_text(const SessionOutcome& o) {
  std::string out;
  for (const auto& f : o.forms) {
    if (f.kind != Form::Kind::kTest && f.kind != Form::Kind::kThm &&
        f.status != FormStatus::kError) {
      continue;
    }
    out += "; " + f.file + ":" + std::to_string(f.pos.line) + " " +
           std::string(to_string(f.kind)) + " " + f.label + "\n\n";
    if (f.status == FormStatus::kError) {
      out += "Error: " + f.message + "\n\n";
      continue;
    }
    out += f.text;
    if (f.kind == Form::Kind::kTest && f.status == FormStatus::kPassed) {
      out += "No counterexamples found.\n";
    }
    out += "\n";
  }
  if (o.error) out += "Stopped: " + *o.error + "\n";
  return out;
}

std::string render_structured(const SessionOutcome& o) {
  ordered_json forms = ordered_json::array();
  for (const auto& f : o.forms) {
    ordered_json j = {{"index", f.index},
                      {"file", f.file},
                      {"line", f.pos.line},
                      {"column", f.pos.column},
                      {"kind", to_string(f.kind)},
                      {"label", f.label},
                      {"status", to_string(f.status)}};
    if (!f.message.empty()) j["message"] = f.message;
    if (f.kind == Form::Kind::kTest || f.kind == Form::Kind::kThm) j["seed"] = f.seed;
    if (f.test) j["report"] = report_json(*f.test, o.world);
    if (f.proof) j["proof"] = proof_json(*f.proof, o.world);
    forms.push_back(std::move(j));
  }
  ordered_json flags = {{"seed", o.flags.test.seed},
                        {"trials", o.flags.test.trials},
                        {"mode", to_string(o.flags.test.mode)},
                        {"dist", to_string(o.flags.test.dist)},
                        {"backtrack", o.flags.backtrack},
                        {"max_rewrite_depth", o.flags.max_rewrite_depth}};
  flags["deterministic"] =
      o.flags.deterministic ? ordered_json(*o.flags.deterministic) : ordered_json("default");
  ordered_json doc = {{"flags", flags}, {"forms", forms}};
  doc["error"] = o.error ? ordered_json(*o.error) : ordered_json(nullptr);
  doc["exit_code"] = o.exit_code;
  return doc.dump(2) + "\n";
}

}  // namespace sedan
