// Acceptance suite. Each test case covers one acceptance criterion and
// prints exactly one "ACCEPTANCE <name>: PASS|FAIL|SKIPPED" line; ctest runs
// them individually via the doctest test-case filter.

#include <doctest.h>

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <random>
#include <sstream>

#include "prooflab/orchestrator.hpp"
#include "prooflab/run_log.hpp"
#include "test_util.hpp"

using namespace prooflab;
using nlohmann::json;
namespace fs = std::filesystem;

// Folds each assertion into the criterion verdict while still reporting it
// through doctest.
#define ACCEPT(cond)                                      \
  do {                                                    \
    const bool acc_ok_ = static_cast<bool>(cond);         \
    CHECK_MESSAGE(acc_ok_, #cond);                        \
    criterion_ok &= acc_ok_;                              \
  } while (0)

namespace {

void print_verdict(const std::string& name, bool ok, const std::string& note = "") {
  std::cout << "ACCEPTANCE " << name << ": " << (ok ? "PASS" : "FAIL");
  if (!note.empty()) std::cout << " (" << note << ")";
  std::cout << std::endl;
}

std::string class_message(ErrorClass c) {
  switch (c) {
    case ErrorClass::kUnsolvedGoals: return "unsolved goals\n⊢ False";
    case ErrorClass::kSyntaxError: return "unexpected token 'at'; expected term";
    case ErrorClass::kUnknownIdentifier: return "unknown identifier 'foo'";
    case ErrorClass::kTypeclassError: return "failed to synthesize\n  Decidable p";
    case ErrorClass::kTypeError:
      return "type mismatch\n  rfl\nhas type\n  ?a = ?a : Prop\n"
             "but is expected to have type\n  1 = 2 : Prop";
    case ErrorClass::kOther: return "maximum recursion depth has been reached";
  }
  return "";
}

std::string diag_line(ErrorClass c) {
  json j;
  j["fileName"] = "attempt.lean";
  j["pos"] = {{"line", 9}, {"column", 2}};
  j["severity"] = "error";
  j["data"] = class_message(c);
  return j.dump();
}

std::string tid_of(int i) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "t%03d", i);
  return buf;
}

// The published outcome matrix: 244 theorems, structured solves t001..t053,
// baseline solves t001..t034 and t054..t056, intersection 34. Failed
// theorems carry first-attempt diagnostics matching the published error
// taxonomy counts.
struct OutcomeMatrixFixture {
  testutil::TempDir tmp;
  std::string benchmark_path;
  std::string backend_path;
  std::string verifier_structured;
  std::string verifier_baseline;
  std::string workspace;

  static constexpr int kTotal = 244;

  static bool structured_solves(int i) { return i <= 53; }
  static bool baseline_solves(int i) { return i <= 34 || (i >= 54 && i <= 56); }

  OutcomeMatrixFixture() {
    benchmark_path = tmp.file("minif2f_replay.jsonl");
    backend_path = tmp.file("backend.jsonl");
    verifier_structured = tmp.file("verifier_structured.jsonl");
    verifier_baseline = tmp.file("verifier_baseline.jsonl");
    workspace = tmp.file("workspace");

    std::string bench;
    std::string backend;
    for (int i = 1; i <= kTotal; ++i) {
      json t;
      t["id"] = tid_of(i);
      t["statement"] = "theorem " + tid_of(i) + " : " + std::to_string(i) + " + 0 = " +
                       std::to_string(i);
      t["source_tag"] = "replay";
      bench += t.dump() + "\n";
      for (int a = 1; a <= 16; ++a) {
        json g;
        g["theorem_id"] = tid_of(i);
        g["attempt_index"] = a;
        g["completion"] = "  simp\n";
        g["finish_reason"] = "stop";
        backend += g.dump() + "\n";
      }
    }
    testutil::write_file(benchmark_path, bench);
    testutil::write_file(backend_path, backend);

    testutil::write_file(verifier_structured,
                         verifier_fixture(&structured_solves,
                                          {{ErrorClass::kUnsolvedGoals, 58},
                                           {ErrorClass::kSyntaxError, 56},
                                           {ErrorClass::kUnknownIdentifier, 38},
                                           {ErrorClass::kTypeclassError, 5},
                                           {ErrorClass::kTypeError, 4},
                                           {ErrorClass::kOther, 30}}));
    testutil::write_file(verifier_baseline,
                         verifier_fixture(&baseline_solves,
                                          {{ErrorClass::kUnsolvedGoals, 68},
                                           {ErrorClass::kSyntaxError, 62},
                                           {ErrorClass::kUnknownIdentifier, 38},
                                           {ErrorClass::kTypeclassError, 5},
                                           {ErrorClass::kTypeError, 4},
                                           {ErrorClass::kOther, 30}}));
  }

  static std::string verifier_fixture(bool (*solves)(int),
                                      std::vector<std::pair<ErrorClass, int>> counts) {
    std::string out;
    std::size_t bucket = 0;
    int used_in_bucket = 0;
    for (int i = 1; i <= kTotal; ++i) {
      json line;
      line["theorem_id"] = tid_of(i);
      if (solves(i)) {
        line["attempt_index"] = (i * 7) % 16 + 1;
        line["verdict"] = "pass";
        line["exit_code"] = 0;
      } else {
        while (bucket < counts.size() && used_in_bucket >= counts[bucket].second) {
          ++bucket;
          used_in_bucket = 0;
        }
        REQUIRE(bucket < counts.size());
        line["attempt_index"] = 1;
        line["verdict"] = "fail";
        line["exit_code"] = 1;
        line["diagnostic_lines"] = json::array({diag_line(counts[bucket].first)});
        ++used_in_bucket;
      }
      out += line.dump() + "\n";
    }
    return out;
  }

  RunConfig config(const std::string& run_id, ScheduleMode mode,
                   const std::string& verifier_path) const {
    RunConfig c;
    c.benchmark_path = benchmark_path;
    c.workspace_root = workspace;
    c.mode = mode;
    c.backend.kind = "mock";
    c.backend.path = backend_path;
    c.verifier.kind = "mock";
    c.verifier.path = verifier_path;
    c.run_id = run_id;
    c.max_parallel_theorems = 8;
    c.max_parallel_generations = 8;
    c.max_parallel_verifications = 8;
    c.quiet = true;
    return c;
  }
};

}  // namespace

// ---------------------------------------------------------------------------
// Criterion 1: paper statistics replay
// ---------------------------------------------------------------------------

TEST_CASE("acceptance: paper_statistics_replay") {
  bool criterion_ok = true;
  const auto started = std::chrono::steady_clock::now();

  OutcomeMatrixFixture fx;
  const auto structured = run(
      fx.config("structured-replay", ScheduleMode::kStructured, fx.verifier_structured));
  const auto baseline =
      run(fx.config("baseline-replay", ScheduleMode::kBaseline, fx.verifier_baseline));
  ACCEPT(!structured.aborted);
  ACCEPT(!baseline.aborted);
  ACCEPT(structured.attempts_logged == 244 * 16);
  ACCEPT(baseline.attempts_logged == 244 * 16);

  const auto rep = compare_runs(fx.workspace, "structured-replay", "baseline-replay",
                                fx.tmp.file("out"));

  ACCEPT(rep.treat.solved_ids.size() == 53);
  ACCEPT(rep.base.solved_ids.size() == 37);
  ACCEPT(std::fabs(rep.treat.pass_rate * 100.0 - 21.72) <= 0.005);
  ACCEPT(std::fabs(rep.base.pass_rate * 100.0 - 15.16) <= 0.005);

  ACCEPT(rep.paired.overlap.both == 34);
  ACCEPT(rep.paired.overlap.only_a == 19);
  ACCEPT(rep.paired.overlap.only_b == 3);
  ACCEPT(rep.paired.overlap.neither == 188);

  ACCEPT(rep.paired.gain_defined);
  ACCEPT(std::fabs(rep.paired.relative_gain * 100.0 - 43.2) <= 0.1);

  ACCEPT(std::fabs(rep.paired.p_value - 8.554e-4) <= 1e-5);
  ACCEPT(rep.paired.p_value < 0.001);

  // report files exist and carry the machine-readable numbers
  const json out = json::parse(testutil::read_file(fx.tmp.file("out") + "/comparison.json"));
  ACCEPT(out["overlap"]["both"] == 34);
  ACCEPT(out["mcnemar"]["p_value"].get<double>() < 0.001);

  const auto elapsed =
      std::chrono::duration_cast<std::chrono::seconds>(std::chrono::steady_clock::now() - started);
  CAPTURE(elapsed.count());
  ACCEPT(elapsed.count() < 10);

  print_verdict("paper_statistics_replay", criterion_ok);
}

// ---------------------------------------------------------------------------
// Criterion 2: error-taxonomy distribution replay
// ---------------------------------------------------------------------------

TEST_CASE("acceptance: error_taxonomy_replay") {
  bool criterion_ok = true;
  const auto started = std::chrono::steady_clock::now();

  struct Row {
    ErrorClass cls;
    double baseline_pct;
    double structured_pct;
  };
  const std::vector<Row> published = {
      {ErrorClass::kUnsolvedGoals, 32.9, 30.4},
      {ErrorClass::kSyntaxError, 30.0, 29.3},
      {ErrorClass::kUnknownIdentifier, 18.4, 19.9},
      {ErrorClass::kOther, 14.5, 15.2},
      {ErrorClass::kTypeclassError, 2.4, 2.6},
      {ErrorClass::kTypeError, 1.9, 2.1},
  };

  // Fixture: error classes assigned over 207 and 191 failed theorems. Each
  // published percentage admits exactly one count; for the structured column
  // those forced counts (58/56/38/29/5/4) sum to 190, so the 191st failure
  // has to land somewhere - it goes to the catch-all class. The published
  // structured column sums to 99.5%, which no 6-way integer partition of 191
  // can reproduce (rounding can shift a full partition by at most 0.3 in
  // total), so one structured value below is expected to miss.
  auto build = [](const std::vector<std::pair<ErrorClass, int>>& counts, int expected_total) {
    std::map<std::string, ErrorClass> classified;
    int n = 0;
    for (const auto& [cls, count] : counts) {
      for (int i = 0; i < count; ++i) classified["f" + std::to_string(++n)] = cls;
    }
    REQUIRE(n == expected_total);
    return error_distribution(classified);
  };

  const auto baseline = build({{ErrorClass::kUnsolvedGoals, 68},
                               {ErrorClass::kSyntaxError, 62},
                               {ErrorClass::kUnknownIdentifier, 38},
                               {ErrorClass::kOther, 30},
                               {ErrorClass::kTypeclassError, 5},
                               {ErrorClass::kTypeError, 4}},
                              207);
  const auto structured = build({{ErrorClass::kUnsolvedGoals, 58},
                                 {ErrorClass::kSyntaxError, 56},
                                 {ErrorClass::kUnknownIdentifier, 38},
                                 {ErrorClass::kOther, 30},
                                 {ErrorClass::kTypeclassError, 5},
                                 {ErrorClass::kTypeError, 4}},
                                191);

  ACCEPT(baseline.total_failures == 207);
  ACCEPT(structured.total_failures == 191);

  for (const auto& row : published) {
    const double got_base = baseline.percent_1dp.at(row.cls);
    CAPTURE(to_string(row.cls));
    CAPTURE(got_base);
    ACCEPT(std::fabs(got_base - row.baseline_pct) <= 0.05);
  }
  for (const auto& row : published) {
    const double got_structured = structured.percent_1dp.at(row.cls);
    CAPTURE(to_string(row.cls));
    CAPTURE(got_structured);
    ACCEPT(std::fabs(got_structured - row.structured_pct) <= 0.05);
  }

  const auto elapsed =
      std::chrono::duration_cast<std::chrono::seconds>(std::chrono::steady_clock::now() - started);
  ACCEPT(elapsed.count() < 5);

  print_verdict("error_taxonomy_replay", criterion_ok,
                criterion_ok ? ""
                             : "published structured column sums to 99.5%; no integer "
                               "partition of 191 failures reproduces it - closest "
                               "assignment puts the leftover failure in 'other' "
                               "(15.7% vs published 15.2%); all other 11 values match");
}

// ---------------------------------------------------------------------------
// Criterion 3: schedule and prompt goldens
// ---------------------------------------------------------------------------

TEST_CASE("acceptance: schedule_prompt_golden") {
  bool criterion_ok = true;

  const auto& sk = builtin_skeletons();
  ACCEPT(sk.size() == 15);
  const std::vector<std::vector<std::string>> expected = {
      {},       {"simp"},     {"intro"},    {"intros"},
      {"constructor"},        {"refine ?_"},
      {"refine ⟨?_, ?_⟩"},        {"aesop"},
      {"norm_num"},           {"linarith"}, {"nlinarith"},
      {"ring"}, {"ring_nf"},  {"simp", "try aesop"},
      {"simp", "try nlinarith"},
  };
  for (int i = 0; i < 15; ++i) {
    CAPTURE(i);
    ACCEPT(sk[i].lines == expected[i]);
  }
  ACCEPT(sk[6].lines[0].find("\xE2\x9F\xA8") != std::string::npos);  // U+27E8
  ACCEPT(sk[6].lines[0].find("\xE2\x9F\xA9") != std::string::npos);  // U+27E9

  const auto schedule = schedule_for(16, ScheduleMode::kStructured);
  ACCEPT(schedule[15].hint.has_value());
  ACCEPT(*schedule[15].hint ==
         "Start by simplifying the goal and hypotheses using simp.");
  ACCEPT(schedule[15].skeleton.index == 1);

  const TheoremRecord sample{"mathd_algebra_10",
                             "theorem mathd_algebra_10 : abs ((120 : ℝ) / 100 * 30 - "
                             "130 / 100 * 20) = 10",
                             "miniF2F-test"};
  const std::vector<std::pair<int, std::string>> goldens = {
      {1, "prompt_entry01.golden"},
      {2, "prompt_entry02.golden"},
      {14, "prompt_entry14.golden"},
      {16, "prompt_entry16.golden"},
  };
  for (const auto& [attempt, name] : goldens) {
    const std::string want = testutil::read_file(testutil::fixture_path("golden/" + name));
    const std::string got = render_prompt(sample, schedule[attempt - 1]);
    CAPTURE(name);
    ACCEPT(got == want);
  }

  print_verdict("schedule_prompt_golden", criterion_ok);
}

// ---------------------------------------------------------------------------
// Criterion 4: McNemar oracle
// ---------------------------------------------------------------------------

namespace {

double mcnemar_bruteforce(int a, int b) {
  const int n = a + b;
  if (n == 0) return 1.0;
  const int m = std::max(a, b);
  std::uint64_t hits = 0;
  const std::uint64_t total = 1ull << n;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    if (__builtin_popcountll(mask) >= m) ++hits;
  }
  return std::min(1.0, 2.0 * static_cast<double>(hits) / static_cast<double>(total));
}

}  // namespace

TEST_CASE("acceptance: mcnemar_oracle") {
  bool criterion_ok = true;

  for (int n = 0; n <= 16; ++n) {
    for (int a = 0; a <= n; ++a) {
      const double lib = mcnemar_exact(a, n - a);
      const double oracle = mcnemar_bruteforce(a, n - a);
      if (std::fabs(lib - oracle) > 1e-12) {
        CAPTURE(a);
        CAPTURE(n - a);
        ACCEPT(std::fabs(lib - oracle) <= 1e-12);
      }
    }
  }

  for (int n = 0; n <= 64; ++n) {
    double prev = 2.0;
    for (int a = (n + 1) / 2; a <= n; ++a) {
      const int b = n - a;
      const double p = mcnemar_exact(a, b);
      const double mirrored = mcnemar_exact(b, a);
      if (p != mirrored || p > prev + 1e-15) {
        CAPTURE(a);
        CAPTURE(b);
        ACCEPT(p == mirrored);
        ACCEPT(p <= prev + 1e-15);
      }
      prev = p;
    }
  }

  ACCEPT(std::fabs(mcnemar_exact(19, 3) - 8.554458618164062e-4) < 1e-15);
  ACCEPT(mcnemar_exact(0, 0) == 1.0);

  print_verdict("mcnemar_oracle", criterion_ok);
}

// ---------------------------------------------------------------------------
// Criterion 5: classifier fixtures
// ---------------------------------------------------------------------------

TEST_CASE("acceptance: classifier_fixtures") {
  bool criterion_ok = true;

  const fs::path dir = testutil::fixture_path("diagnostics");
  ACCEPT(fs::is_directory(dir));

  int files = 0;
  std::map<std::string, int> per_class;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() != ".jsonl") continue;
    ++files;
    std::string label =
        testutil::read_file(fs::path(entry.path()).replace_extension(".expected").string());
    while (!label.empty() && (label.back() == '\n' || label.back() == '\r')) label.pop_back();
    const auto expected = error_class_from_string(label);
    ACCEPT(expected.has_value());
    if (!expected) continue;
    per_class[label]++;

    std::vector<std::string> lines;
    std::istringstream in(testutil::read_file(entry.path().string()));
    for (std::string line; std::getline(in, line);) {
      if (!line.empty()) lines.push_back(line);
    }
    AttemptRecord attempt;
    attempt.theorem_id = entry.path().stem().string();
    attempt.attempt_index = 1;
    attempt.verdict = Verdict::kFail;
    attempt.error_class = ErrorClass::kOther;
    attempt.diagnostics = parse_diagnostics(lines).items;

    const ErrorClass first = classify_theorem_failure({attempt});
    const ErrorClass second = classify_theorem_failure({attempt});
    CAPTURE(entry.path().filename().string());
    ACCEPT(first == *expected);
    ACCEPT(first == second);  // deterministic
  }
  CAPTURE(files);
  ACCEPT(files >= 12);
  for (ErrorClass c : all_error_classes()) {
    CAPTURE(to_string(c));
    ACCEPT(per_class[to_string(c)] >= 2);
  }

  // totality: arbitrary strings always land in exactly one class
  std::mt19937 rng(53);
  for (int i = 0; i < 2000; ++i) {
    std::string s;
    const int len = static_cast<int>(rng() % 50);
    for (int c = 0; c < len; ++c) s += static_cast<char>(1 + rng() % 127);
    bool known = false;
    for (ErrorClass c : all_error_classes()) known |= (classify_message(s) == c);
    if (!known) ACCEPT(known);
  }

  print_verdict("classifier_fixtures", criterion_ok);
}

// ---------------------------------------------------------------------------
// Criterion 6: determinism and resume
// ---------------------------------------------------------------------------

namespace {

using AttemptKey = std::pair<std::string, int>;

std::map<AttemptKey, AttemptRecord> normalized_log(const std::string& path) {
  std::map<AttemptKey, AttemptRecord> out;
  for (auto& r : read_attempt_log(path)) {
    r.generation_ms = 0;
    r.verification_ms = 0;
    out[{r.theorem_id, r.attempt_index}] = r;
  }
  return out;
}

struct DeterminismFixture {
  testutil::TempDir tmp;
  std::string benchmark_path;
  std::string backend_path;
  std::string verifier_path;
  std::string workspace;

  DeterminismFixture() {
    benchmark_path = tmp.file("bench.jsonl");
    backend_path = tmp.file("backend.jsonl");
    verifier_path = tmp.file("verifier.jsonl");
    workspace = tmp.file("ws");
    std::string bench, backend, verifier;
    for (int i = 1; i <= 8; ++i) {
      const std::string tid = "d" + std::to_string(i);
      bench += R"({"id":")" + tid + R"(","statement":"theorem )" + tid +
               R"( : 1 = 1","source_tag":"s"})" "\n";
      for (int a = 1; a <= 16; ++a) {
        backend += R"({"theorem_id":")" + tid + R"(","attempt_index":)" +
                   std::to_string(a) + R"(,"completion":"  simp\n","finish_reason":"stop"})"
                   "\n";
      }
      if (i % 3 == 0) {
        verifier += R"({"theorem_id":")" + tid +
                    R"(","attempt_index":5,"verdict":"pass","exit_code":0})" "\n";
      } else {
        verifier += R"({"theorem_id":")" + tid +
                    R"(","attempt_index":1,"verdict":"fail","exit_code":1,)"
                    R"("diagnostic_lines":["{\"severity\":\"error\",\"pos\":)"
                    R"({\"line\":9,\"column\":2},\"data\":\"unsolved goals\"}"]})" "\n";
      }
    }
    testutil::write_file(benchmark_path, bench);
    testutil::write_file(backend_path, backend);
    testutil::write_file(verifier_path, verifier);
  }

  RunConfig config(const std::string& run_id, int parallelism) const {
    RunConfig c;
    c.benchmark_path = benchmark_path;
    c.workspace_root = workspace;
    c.backend.kind = "mock";
    c.backend.path = backend_path;
    c.verifier.kind = "mock";
    c.verifier.path = verifier_path;
    c.run_id = run_id;
    c.max_parallel_theorems = parallelism;
    c.max_parallel_generations = parallelism;
    c.max_parallel_verifications = parallelism;
    c.quiet = true;
    return c;
  }
};

}  // namespace

TEST_CASE("acceptance: determinism_resume") {
  bool criterion_ok = true;

  DeterminismFixture fx;
  run(fx.config("serial", 1));
  run(fx.config("parallel", 8));
  const auto serial = normalized_log(attempt_log_path(fx.workspace, "serial"));
  const auto parallel = normalized_log(attempt_log_path(fx.workspace, "parallel"));
  ACCEPT(serial.size() == 8 * 16);
  ACCEPT(serial == parallel);

  // interrupt at a random byte offset, then resume
  run(fx.config("uninterrupted", 4));
  const auto expected = normalized_log(attempt_log_path(fx.workspace, "uninterrupted"));

  run(fx.config("interrupted", 4));
  const std::string log_path = attempt_log_path(fx.workspace, "interrupted");
  std::string content = testutil::read_file(log_path);
  std::mt19937 rng(std::random_device{}());
  const std::size_t cut = rng() % content.size();
  CAPTURE(cut);
  content.resize(cut);
  testutil::write_file(log_path, content);

  const auto resumed = run(fx.config("interrupted", 4));
  ACCEPT(!resumed.aborted);
  ACCEPT(normalized_log(log_path) == expected);

  print_verdict("determinism_resume", criterion_ok);
}

// ---------------------------------------------------------------------------
// Criterion 7: real-verifier smoke test (gated on a pinned Lean workspace)
// ---------------------------------------------------------------------------

TEST_CASE("acceptance: real_verifier_smoke") {
  const char* ws = std::getenv("PROOFLAB_LEAN_WS");
  if (!ws || !*ws || !fs::is_directory(ws)) {
    std::cout << "ACCEPTANCE real_verifier_smoke: SKIPPED "
              << "(set PROOFLAB_LEAN_WS to a Lean workspace with Mathlib built)"
              << std::endl;
    return;
  }

  bool criterion_ok = true;
  testutil::TempDir tmp;

  VerifierDescriptor d;
  d.kind = "lake";
  d.workspace = ws;
  d.timeout_seconds = 60;
  auto verifier = make_verifier(d);

  const TheoremRecord trivially_true{"prooflab_smoke_add", "theorem prooflab_smoke_add : 1 + 1 = 2",
                                     "smoke"};
  const TheoremRecord unprovable{"prooflab_smoke_false",
                                 "theorem prooflab_smoke_false : (1 : ℕ) = 2", "smoke"};
  const auto schedule = schedule_for(16, ScheduleMode::kStructured);

  // norm_num closes the trivial goal
  auto pass_file = assemble(trivially_true, schedule[0], "  norm_num\n", tmp.str(), "smoke");
  const auto pass = verifier->verify(pass_file);
  CAPTURE(pass.wall_ms);
  ACCEPT(pass.verdict == VerifyVerdict::kPass);
  ACCEPT(pass.exit_code == 0);

  // the same theorem closed by sorry must not count
  auto sorry_file = assemble(trivially_true, schedule[0], "  sorry\n", tmp.str(), "smoke");
  ACCEPT(verifier->verify(sorry_file).verdict == VerifyVerdict::kFail);

  // unprovable goal: fails or times out inside the budget
  auto bad_file = assemble(unprovable, schedule[0], "  norm_num\n", tmp.str(), "smoke");
  const auto started = std::chrono::steady_clock::now();
  const auto bad = verifier->verify(bad_file);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(
                        std::chrono::steady_clock::now() - started)
                        .count();
  ACCEPT(bad.verdict == VerifyVerdict::kFail || bad.verdict == VerifyVerdict::kTimeout);
  ACCEPT(secs <= 70);

  // sanitization matters on a real toolchain: the truncated completion
  // compiles where the raw over-generation does not
  const std::string raw = "  norm_num\n```\nSome trailing prose about the proof.";
  auto junk_file = assemble(trivially_true, schedule[0], raw, tmp.str(), "smoke-raw");
  ACCEPT(verifier->verify(junk_file).verdict == VerifyVerdict::kFail);
  auto clean_file =
      assemble(trivially_true, schedule[0], sanitize_completion(raw), tmp.str(), "smoke-clean");
  ACCEPT(verifier->verify(clean_file).verdict == VerifyVerdict::kPass);

  print_verdict("real_verifier_smoke", criterion_ok);
}
