// Batch checker: admits the forms of each file and runs test? and thm.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sedan/session.hpp"

namespace {

std::optional<bool> on_off(const std::string& s, const char* flag) {
  if (s == "on") return true;
  if (s == "off") return false;
  throw CLI::ValidationError(flag, "expected on or off");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conjecture checker: random testing plus a small waterfall prover."};
  std::vector<std::string> files;
  std::optional<std::uint64_t> seed;
  std::size_t trials = 100;
  std::string mode = "random";
  std::string dist = "geometric";
  std::string backtrack = "on";
  std::size_t depth = 8;
  std::string report_path;
  std::string format = "both";
  std::string deterministic;

  app.add_option("files", files, "Source files")->required()->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "Global seed (overrides SEDAN_SEED)");
  app.add_option("--trials", trials, "Trials per test")->check(CLI::PositiveNumber);
  app.add_option("--mode", mode, "random|exhaustive|mixed")
      ->check(CLI::IsMember({"random", "exhaustive", "mixed"}));
  app.add_option("--dist", dist, "geometric|uniform")
      ->check(CLI::IsMember({"geometric", "uniform"}));
  app.add_option("--backtrack", backtrack, "on|off")->check(CLI::IsMember({"on", "off"}));
  app.add_option("--max-rewrite-depth", depth, "Rewrite depth bound");
  app.add_option("--report", report_path, "Write the structured report here");
  app.add_option("--format", format, "text|structured|both")
      ->check(CLI::IsMember({"text", "structured", "both"}));
  app.add_option("--deterministic", deterministic, "on|off (default: on for thm only)")
      ->check(CLI::IsMember({"on", "off"}));
  CLI11_PARSE(app, argc, argv);

  sedan::SessionFlags flags;
  flags.test.seed = 24;
  if (const char* env = std::getenv("SEDAN_SEED")) {
    try {
      flags.test.seed = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "SEDAN_SEED is not a number: " << env << "\n";
      return 2;
    }
  }
  if (seed) flags.test.seed = *seed;
  flags.test.trials = trials;
  flags.test.mode = *sedan::parse_test_mode(mode);
  flags.test.dist = *sedan::parse_distribution(dist);
  flags.backtrack = *on_off(backtrack, "--backtrack");
  flags.max_rewrite_depth = depth;
  if (!deterministic.empty()) flags.deterministic = on_off(deterministic, "--deterministic");

  const bool text = format != "structured";
  const bool structured = format != "text";
  int exit_code = 0;
  std::string documents;
  for (const auto& file : files) {
    const sedan::SessionOutcome outcome = sedan::process_file(file, flags);
    if (text) std::cout << sedan::render_text(outcome);
    if (structured) documents += sedan::render_structured(outcome);
    if (outcome.error) std::cerr << "error: " << *outcome.error << "\n";
    exit_code = std::max(exit_code, outcome.exit_code);
  }
  if (structured) {
    if (report_path.empty()) {
      std::cout << documents;
    } else {
      std::ofstream out(report_path, std::ios::binary);
      if (!out) {
        std::cerr << "cannot write " << report_path << "\n";
        return 2;
      }
      out << documents;
    }
  }
  return exit_code;
}
