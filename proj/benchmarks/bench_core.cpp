#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "prooflab/diagnostics.hpp"
#include "prooflab/leanrunner.hpp"
#include "prooflab/schedule.hpp"
#include "prooflab/stats.hpp"

namespace {

const prooflab::TheoremRecord kTheorem{
    "imo_1960_p2",
    "theorem imo_1960_p2 (x : ℝ) (h₀ : 0 ≤ 1 + 2 * x)\n"
    "    (h₁ : (1 - Real.sqrt (1 + 2 * x)) ^ 2 ≠ 0)\n"
    "    (h₂ : 4 * x ^ 2 / (1 - Real.sqrt (1 + 2 * x)) ^ 2 < 2 * x + 9) :\n"
    "    -(1 / 2) ≤ x ∧ x < 45 / 8",
    "miniF2F-test"};

void BM_RenderPrompt(benchmark::State& state) {
  const auto schedule = prooflab::schedule_for(16, prooflab::ScheduleMode::kStructured);
  std::size_t i = 0;
  for (auto _ : state) {
    auto prompt = prooflab::render_prompt(kTheorem, schedule[i++ % schedule.size()]);
    benchmark::DoNotOptimize(prompt);
  }
}
BENCHMARK(BM_RenderPrompt);

void BM_SanitizeCompletion(benchmark::State& state) {
  std::string completion;
  for (int i = 0; i < state.range(0); ++i) {
    completion += "  nlinarith [sq_nonneg x, sq_nonneg (x + 1)]\n";
  }
  completion += "```\ntheorem restated : True := trivial\nand some trailing prose\n";
  for (auto _ : state) {
    auto clean = prooflab::sanitize_completion(completion);
    benchmark::DoNotOptimize(clean);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SanitizeCompletion)->Range(1, 256)->Complexity();

void BM_ParseDiagnostics(benchmark::State& state) {
  std::vector<std::string> lines;
  for (int i = 0; i < state.range(0); ++i) {
    lines.push_back(
        R"({"fileName":"a.lean","pos":{"line":)" + std::to_string(9 + i) +
        R"(,"column":2},"severity":"error","caption":"","data":"unsolved goals\n⊢ False"})");
  }
  for (auto _ : state) {
    auto parsed = prooflab::parse_diagnostics(lines);
    benchmark::DoNotOptimize(parsed);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ParseDiagnostics)->Range(1, 64)->Complexity();

void BM_ClassifyMessage(benchmark::State& state) {
  const std::vector<std::string> messages = {
      "unsolved goals\n⊢ False",
      "unexpected token ':='; expected command",
      "unknown identifier 'foo'",
      "failed to synthesize\n  Decidable p",
      "type mismatch\n  rfl",
      "maximum recursion depth has been reached",
  };
  std::size_t i = 0;
  for (auto _ : state) {
    auto cls = prooflab::classify_message(messages[i++ % messages.size()]);
    benchmark::DoNotOptimize(cls);
  }
}
BENCHMARK(BM_ClassifyMessage);

void BM_McnemarExact(benchmark::State& state) {
  const int a = static_cast<int>(state.range(0));
  const int b = a / 4;
  for (auto _ : state) {
    double p = prooflab::mcnemar_exact(a, b);
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(BM_McnemarExact)->Arg(19)->Arg(48)->Arg(200);

}  // namespace

BENCHMARK_MAIN();
