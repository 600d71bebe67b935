#include <benchmark/benchmark.h>

#include <string>

#include "sedan/clause.hpp"
#include "sedan/datadef.hpp"
#include "sedan/session.hpp"
#include "sedan/simplify.hpp"
#include "sedan/testgen.hpp"
#include "sedan/waterfall.hpp"

using namespace sedan;

namespace {

const World& triangle_world() {
  static const World w = process_file(std::string(SEDAN_CORPUS_DIR) + "/triangle.lisp", {}).world;
  return w;
}

const char* kTriangleThm = R"(
(implies (and (trianglep x) (> (third x) 256) (= (third x) (* (second x) (first x))))
         (not (equal "isosceles" (shape x)))))";

void BM_Enumerate(benchmark::State& state) {
  const World& w = triangle_world();
  std::uint64_t n = 0;
  for (auto _ : state) benchmark::DoNotOptimize(enumerate(w, "triple", n++ % 100000));
}
BENCHMARK(BM_Enumerate);

void BM_Sample(benchmark::State& state) {
  const World& w = triangle_world();
  Rng rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(sample(w, "true-list", rng, Distribution::kGeometric));
}
BENCHMARK(BM_Sample);

void BM_TopLevelTest(benchmark::State& state) {
  const World w = process_text(
      "(defun rev (x) (if (endp x) nil (append (rev (cdr x)) (list (car x)))))", {}).world;
  const Term conj = parse_term("(implies (true-listp x) (equal (rev (rev x)) x))");
  TestConfig cfg;
  cfg.trials = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(top_level_test(conj, cfg, w));
}
BENCHMARK(BM_TopLevelTest)->Arg(100)->Arg(1000);

void BM_Simplify(benchmark::State& state) {
  const World& w = triangle_world();
  const Clause c = clausify(parse_term(kTriangleThm)).front();
  for (auto _ : state) benchmark::DoNotOptimize(simplify_clause(c, w));
}
BENCHMARK(BM_Simplify);

void BM_WaterfallTriangle(benchmark::State& state) {
  const World& w = triangle_world();
  const Term conj = parse_term(kTriangleThm);
  WaterfallConfig cfg;
  cfg.test = w.test_defaults;
  for (auto _ : state) benchmark::DoNotOptimize(run_waterfall(conj, w, {}, cfg));
}
BENCHMARK(BM_WaterfallTriangle)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
