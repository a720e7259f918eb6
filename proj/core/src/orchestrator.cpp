#include "prooflab/orchestrator.hpp"

#include <atomic>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <semaphore>
#include <sstream>
#include <thread>

#include "json_io.hpp"
#include "prooflab/run_log.hpp"

namespace prooflab {

namespace fs = std::filesystem;
using jsonio::json;

// ---------------------------------------------------------------------------
// Config
// ---------------------------------------------------------------------------

RunConfig run_config_from_json(const std::string& text) {
  json j = jsonio::parse_or_throw(text, "run config");
  RunConfig c;
  c.benchmark_path = jsonio::require_string(j, "benchmark", "run config");
  c.workspace_root = jsonio::get_string(j, "workspace", c.workspace_root);
  c.k = j.value("k", c.k);
  if (c.k < 1) throw std::runtime_error("run config: k must be >= 1");

  const std::string mode = jsonio::get_string(j, "mode", "structured");
  auto m = schedule_mode_from_string(mode);
  if (!m) throw std::runtime_error("run config: unknown mode '" + mode + "'");
  c.mode = *m;

  if (j.contains("generation") && j["generation"].is_object()) {
    const json& g = j["generation"];
    c.generation.temperature = g.value("temperature", c.generation.temperature);
    c.generation.top_p = g.value("top_p", c.generation.top_p);
    c.generation.max_tokens = g.value("max_tokens", c.generation.max_tokens);
    c.generation.model_name = jsonio::get_string(g, "model", c.generation.model_name);
    if (g.contains("stop") && g["stop"].is_array()) {
      for (const auto& s : g["stop"]) {
        if (s.is_string()) c.generation.stop_sequences.push_back(s.get<std::string>());
      }
    }
    if (c.generation.top_p <= 0.0 || c.generation.top_p > 1.0) {
      throw std::runtime_error("run config: top_p must be in (0, 1]");
    }
    if (c.generation.max_tokens < 1) {
      throw std::runtime_error("run config: max_tokens must be >= 1");
    }
  }

  if (!j.contains("backend") || !j["backend"].is_object()) {
    throw std::runtime_error("run config: missing backend descriptor");
  }
  c.backend = backend_descriptor_from_json(jsonio::dump_lossy(j["backend"]));
  if (c.backend.model.empty()) c.backend.model = c.generation.model_name;

  if (!j.contains("verifier") || !j["verifier"].is_object()) {
    throw std::runtime_error("run config: missing verifier descriptor");
  }
  c.verifier = verifier_descriptor_from_json(jsonio::dump_lossy(j["verifier"]));

  c.timeout_seconds = j.value("timeout_seconds", c.timeout_seconds);
  if (!j["verifier"].contains("timeout_seconds")) {
    c.verifier.timeout_seconds = c.timeout_seconds;
  }

  c.max_parallel_theorems = j.value("max_parallel_theorems", c.max_parallel_theorems);
  c.max_parallel_generations = j.value("max_parallel_generations", c.max_parallel_generations);
  c.max_parallel_verifications =
      j.value("max_parallel_verifications", c.max_parallel_verifications);
  if (c.max_parallel_theorems < 1 || c.max_parallel_generations < 1 ||
      c.max_parallel_verifications < 1) {
    throw std::runtime_error("run config: parallelism limits must be >= 1");
  }
  c.early_stop = j.value("early_stop", false);
  c.run_id = jsonio::get_string(j, "run_id");
  c.skeleton_file = jsonio::get_string(j, "skeleton_file");
  c.toolchain_version = jsonio::get_string(j, "toolchain_version", c.toolchain_version);
  c.library_commit = jsonio::get_string(j, "library_commit", c.library_commit);
  c.toolchain_error_limit = j.value("toolchain_error_limit", c.toolchain_error_limit);
  c.quiet = j.value("quiet", false);
  return c;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return run_config_from_json(ss.str());
}

// ---------------------------------------------------------------------------
// Run
// ---------------------------------------------------------------------------

namespace {

std::string iso8601_utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string generate_run_id(ScheduleMode mode) {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char stamp[32];
  std::strftime(stamp, sizeof(stamp), "%Y%m%d-%H%M%S", &tm);
  std::random_device rd;
  char suffix[8];
  std::snprintf(suffix, sizeof(suffix), "%04x", rd() & 0xffff);
  return to_string(mode) + "-" + stamp + "-" + suffix;
}

Verdict to_attempt_verdict(VerifyVerdict v) {
  switch (v) {
    case VerifyVerdict::kPass: return Verdict::kPass;
    case VerifyVerdict::kFail: return Verdict::kFail;
    case VerifyVerdict::kTimeout: return Verdict::kTimeout;
    case VerifyVerdict::kToolchainError: break;  // never logged
  }
  return Verdict::kFail;
}

std::optional<ErrorClass> attempt_error_class(Verdict verdict,
                                              const std::vector<Diagnostic>& diagnostics) {
  if (verdict != Verdict::kFail && verdict != Verdict::kTimeout) return std::nullopt;
  for (const auto& d : diagnostics) {
    if (d.severity == Severity::kError) return classify_message(d.message);
  }
  return ErrorClass::kOther;
}

json summary_to_json(const RunSummary& s) {
  json j;
  j["run_id"] = s.run_id;
  j["total_theorems"] = s.total_theorems;
  j["solved"] = static_cast<int>(s.solved_ids.size());
  j["pass_rate_percent"] = s.pass_rate * 100.0;
  return j;
}

json distribution_to_json(const ErrorDistribution& d) {
  json j;
  j["total_failures"] = d.total_failures;
  j["no_failures"] = d.no_failures;
  for (ErrorClass c : all_error_classes()) {
    json cj;
    cj["count"] = d.counts.at(c);
    cj["percent"] = d.percent.at(c);
    cj["percent_1dp"] = d.percent_1dp.at(c);
    j["classes"][to_string(c)] = cj;
  }
  return j;
}

void write_text_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << content;
}

}  // namespace

std::string attempt_log_path(const std::string& workspace_root, const std::string& run_id) {
  return (fs::path(workspace_root) / run_id / "attempts.jsonl").string();
}

RunManifest load_manifest(const std::string& workspace_root, const std::string& run_id) {
  const fs::path path = fs::path(workspace_root) / run_id / "manifest.json";
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("no manifest for run '" + run_id + "' under '" +
                                    workspace_root + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return manifest_from_json(ss.str());
}

RunResult run(const RunConfig& config) {
  const auto benchmark = load_benchmark(config.benchmark_path);
  const auto errors = validate_benchmark(benchmark);
  if (!errors.empty()) {
    std::string msg = "benchmark validation failed (" + std::to_string(errors.size()) +
                      " error(s)); first: " + errors.front().detail;
    throw std::runtime_error(msg);
  }
  if (!config.quiet) {
    for (const auto& w : benchmark_warnings(benchmark)) {
      std::cerr << "warning: " << w.detail << "\n";
    }
  }

  const std::vector<TacticSkeleton> skeletons =
      config.skeleton_file.empty() ? builtin_skeletons()
                                   : load_skeleton_file(config.skeleton_file);
  const auto schedule = schedule_for(config.k, config.mode, skeletons);

  auto backend = make_backend(config.backend);
  auto verifier = make_verifier(config.verifier);

  RunResult result;
  result.run_id = config.run_id.empty() ? generate_run_id(config.mode) : config.run_id;

  const fs::path run_dir = fs::path(config.workspace_root) / result.run_id;
  std::error_code ec;
  fs::create_directories(run_dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create run workspace '" + run_dir.string() +
                             "': " + ec.message());
  }

  // Manifest first; a rerun against an existing manifest must agree on the
  // benchmark and schedule shape, otherwise resume would mix runs.
  RunManifest manifest;
  manifest.run_id = result.run_id;
  manifest.mode = to_string(config.mode);
  manifest.k = config.k;
  manifest.max_tokens = config.generation.max_tokens;
  manifest.temperature = config.generation.temperature;
  manifest.top_p = config.generation.top_p;
  manifest.timeout_seconds = config.verifier.timeout_seconds;
  manifest.backend = backend->descriptor();
  manifest.model = config.generation.model_name;
  manifest.early_stop = config.early_stop;
  manifest.toolchain_version = config.toolchain_version;
  manifest.library_commit = config.library_commit;
  manifest.started_at = iso8601_utc_now();
  manifest.benchmark_path = config.benchmark_path;
  manifest.benchmark_hash = hash_file(config.benchmark_path);
  manifest.benchmark_count = static_cast<int>(benchmark.size());
  manifest.skeleton_hash = hash_skeletons(skeletons);

  const fs::path manifest_path = run_dir / "manifest.json";
  if (fs::exists(manifest_path)) {
    const RunManifest existing = load_manifest(config.workspace_root, result.run_id);
    if (existing.benchmark_hash != manifest.benchmark_hash ||
        existing.skeleton_hash != manifest.skeleton_hash || existing.mode != manifest.mode ||
        existing.k != manifest.k) {
      throw std::runtime_error("run '" + result.run_id +
                               "' already exists with a different benchmark/schedule; "
                               "refusing to resume");
    }
  } else {
    write_text_file(manifest_path, manifest_to_json(manifest));
  }

  AttemptLogWriter log(attempt_log_path(config.workspace_root, result.run_id));

  std::atomic<std::size_t> next_theorem{0};
  std::atomic<int> appended{0};
  std::atomic<int> skipped{0};
  std::atomic<int> toolchain_errors{0};
  std::atomic<bool> abort_flag{false};
  std::atomic<int> done_theorems{0};
  std::mutex abort_mu;
  std::string abort_reason;

  std::counting_semaphore<> gen_sem(config.max_parallel_generations);
  std::counting_semaphore<> ver_sem(config.max_parallel_verifications);

  struct Permit {
    std::counting_semaphore<>& sem;
    explicit Permit(std::counting_semaphore<>& s) : sem(s) { sem.acquire(); }
    ~Permit() { sem.release(); }
  };

  auto process_theorem = [&](const TheoremRecord& theorem) {
    for (const auto& entry : schedule) {
      if (abort_flag.load()) return;
      if (config.early_stop && log.has_pass(theorem.id)) {
        skipped++;
        continue;
      }
      if (log.contains(theorem.id, entry.attempt_index)) {
        skipped++;
        continue;
      }

      const StructuredQuery query{theorem.id, entry.skeleton, entry.hint, entry.attempt_index};
      AttemptRecord rec;
      rec.theorem_id = query.theorem_id;
      rec.attempt_index = query.attempt_index;
      rec.prompt_text = render_prompt(theorem, entry);

      GenerationRequest request;
      request.prompt = rec.prompt_text;
      request.theorem_id = theorem.id;
      request.attempt_index = entry.attempt_index;
      request.params = config.generation;

      GenerationResult gen;
      {
        Permit permit(gen_sem);
        gen = backend->generate(request);
      }
      rec.generation_ms = gen.latency_ms;

      if (gen.finish_reason == GenerationResult::Finish::kBackendError) {
        rec.finish_reason = FinishReason::kBackendError;
        rec.verdict = Verdict::kBackendError;
        rec.backend_message = gen.error_message;
        if (log.append(rec)) appended++;
        continue;
      }
      rec.finish_reason = gen.finish_reason == GenerationResult::Finish::kLength
                              ? FinishReason::kLength
                              : FinishReason::kStop;
      rec.completion_text = sanitize_completion(gen.completion_text);

      const CandidateFile candidate = assemble(theorem, entry, rec.completion_text,
                                               config.workspace_root, result.run_id);

      VerificationOutcome outcome;
      {
        Permit permit(ver_sem);
        outcome = verifier->verify(candidate);
      }

      if (outcome.verdict == VerifyVerdict::kToolchainError) {
        const int count = ++toolchain_errors;
        if (!config.quiet) {
          std::cerr << "toolchain error (" << count << "/" << config.toolchain_error_limit
                    << "): " << outcome.note << "\n";
        }
        if (count >= config.toolchain_error_limit) {
          std::lock_guard<std::mutex> lock(abort_mu);
          abort_reason = "toolchain errors reached the configured limit (" +
                         std::to_string(config.toolchain_error_limit) +
                         "); last: " + outcome.note;
          abort_flag.store(true);
          return;
        }
        continue;  // attempt stays unlogged; resume retries it
      }

      rec.verification_ms = outcome.wall_ms;
      rec.diagnostics = parse_diagnostics(outcome.raw_diagnostic_lines).items;
      Verdict verdict = to_attempt_verdict(outcome.verdict);
      if (verdict == Verdict::kPass) {
        for (const auto& d : rec.diagnostics) {
          if (d.severity == Severity::kError) {
            verdict = Verdict::kFail;  // exit 0 with error diagnostics is not a pass
            break;
          }
        }
      }
      rec.verdict = verdict;
      rec.error_class = attempt_error_class(verdict, rec.diagnostics);

      if (log.append(rec)) appended++;
      if (config.early_stop && verdict == Verdict::kPass) {
        const auto remaining = config.k - entry.attempt_index;
        skipped += remaining;
        break;
      }
    }
  };

  auto worker = [&]() {
    for (;;) {
      if (abort_flag.load()) return;
      const std::size_t i = next_theorem.fetch_add(1);
      if (i >= benchmark.size()) return;
      try {
        process_theorem(benchmark[i]);
      } catch (const std::exception& e) {
        // An I/O failure mid-run must not tear the process down; the log is
        // flushed per record, so the run stays resumable.
        std::lock_guard<std::mutex> lock(abort_mu);
        if (abort_reason.empty()) abort_reason = e.what();
        abort_flag.store(true);
        return;
      }
      const int done = ++done_theorems;
      if (!config.quiet && (done % 25 == 0 || done == static_cast<int>(benchmark.size()))) {
        std::cerr << "progress: " << done << "/" << benchmark.size() << " theorems\n";
      }
    }
  };

  const int n_workers =
      std::max(1, std::min<int>(config.max_parallel_theorems,
                                static_cast<int>(benchmark.size())));
  std::vector<std::thread> workers;
  workers.reserve(n_workers);
  for (int i = 0; i < n_workers; ++i) workers.emplace_back(worker);
  for (auto& w : workers) w.join();

  result.attempts_logged = appended.load();
  result.attempts_skipped = skipped.load();
  result.aborted = abort_flag.load();
  result.abort_reason = abort_reason;
  return result;
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

namespace {

struct LoadedRun {
  RunManifest manifest;
  std::vector<AttemptRecord> attempts;
  RunSummary summary;
  ErrorDistribution errors;
};

LoadedRun load_run(const std::string& workspace_root, const std::string& run_id) {
  LoadedRun r;
  r.manifest = load_manifest(workspace_root, run_id);
  const std::string log_path = attempt_log_path(workspace_root, run_id);
  if (!fs::exists(log_path)) {
    throw std::runtime_error("no attempt log for run '" + run_id + "'");
  }
  r.attempts = read_attempt_log(log_path);

  // Prefer the benchmark file for the theorem universe; fall back to the log
  // when it has moved or changed since the run.
  std::set<std::string> universe;
  bool have_benchmark = false;
  try {
    if (hash_file(r.manifest.benchmark_path) == r.manifest.benchmark_hash) {
      for (const auto& t : load_benchmark(r.manifest.benchmark_path)) universe.insert(t.id);
      have_benchmark = !universe.empty();
    }
  } catch (const std::exception&) {
    have_benchmark = false;
  }
  if (have_benchmark) {
    r.summary = summarize_run(run_id, r.attempts, universe);
  } else {
    for (const auto& a : r.attempts) universe.insert(a.theorem_id);
    r.summary.run_id = run_id;
    r.summary.total_theorems =
        r.manifest.benchmark_count > 0 ? r.manifest.benchmark_count
                                       : static_cast<int>(universe.size());
    for (const auto& a : r.attempts) {
      if (a.verdict == Verdict::kPass) r.summary.solved_ids.insert(a.theorem_id);
    }
    r.summary.pass_rate = r.summary.total_theorems == 0
                              ? 0.0
                              : static_cast<double>(r.summary.solved_ids.size()) /
                                    r.summary.total_theorems;
  }

  std::map<std::string, std::vector<AttemptRecord>> by_theorem;
  for (const auto& a : r.attempts) by_theorem[a.theorem_id].push_back(a);

  std::map<std::string, ErrorClass> classified;
  for (const auto& id : universe) {
    if (r.summary.solved_ids.count(id)) continue;
    auto it = by_theorem.find(id);
    static const std::vector<AttemptRecord> kNone;
    classified[id] = classify_theorem_failure(it == by_theorem.end() ? kNone : it->second);
  }
  r.errors = error_distribution(classified);
  return r;
}

}  // namespace

ComparisonReport compare_runs(const std::string& workspace_root, const std::string& run_a,
                              const std::string& run_b, const std::string& out_dir) {
  const RunManifest manifest_a = load_manifest(workspace_root, run_a);
  const RunManifest manifest_b = load_manifest(workspace_root, run_b);
  if (manifest_a.benchmark_hash != manifest_b.benchmark_hash) {
    throw std::runtime_error(
        "benchmark mismatch: run '" + run_a + "' used " + manifest_a.benchmark_hash +
        " but run '" + run_b + "' used " + manifest_b.benchmark_hash +
        "; paired comparison requires the same benchmark");
  }

  LoadedRun a = load_run(workspace_root, run_a);
  LoadedRun b = load_run(workspace_root, run_b);

  ComparisonReport rep;
  rep.treat = a.summary;
  rep.base = b.summary;
  rep.errors_treat = a.errors;
  rep.errors_base = b.errors;
  rep.paired.overlap = paired_overlap(a.summary, b.summary);
  rep.paired.p_value = mcnemar_exact(rep.paired.overlap.only_a, rep.paired.overlap.only_b);
  rep.paired.chi_square =
      mcnemar_chi_square(rep.paired.overlap.only_a, rep.paired.overlap.only_b);
  if (b.summary.pass_rate > 0.0) {
    rep.paired.gain_defined = true;
    rep.paired.relative_gain = relative_gain(b.summary, a.summary);
  }

  rep.text = format_comparison_table(rep.treat, rep.base, rep.paired) + "\n" +
             format_error_table(run_a + " (%)", rep.errors_treat, run_b + " (%)",
                                rep.errors_base);

  json j;
  j["run_a"] = summary_to_json(rep.treat);
  j["run_b"] = summary_to_json(rep.base);
  j["overlap"]["both"] = rep.paired.overlap.both;
  j["overlap"]["only_a"] = rep.paired.overlap.only_a;
  j["overlap"]["only_b"] = rep.paired.overlap.only_b;
  j["overlap"]["neither"] = rep.paired.overlap.neither;
  if (rep.paired.gain_defined) {
    j["relative_gain_percent"] = rep.paired.relative_gain * 100.0;
  } else {
    j["relative_gain_percent"] = nullptr;
  }
  j["mcnemar"]["p_value"] = rep.paired.p_value;
  j["mcnemar"]["chi_square"] = rep.paired.chi_square;
  j["mcnemar"]["discordant_pairs"] = rep.paired.overlap.only_a + rep.paired.overlap.only_b;
  j["error_distribution_a"] = distribution_to_json(rep.errors_treat);
  j["error_distribution_b"] = distribution_to_json(rep.errors_base);
  j["benchmark_hash"] = a.manifest.benchmark_hash;
  rep.json = j.dump(2);

  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    write_text_file(fs::path(out_dir) / "comparison.txt", rep.text);
    write_text_file(fs::path(out_dir) / "comparison.json", rep.json);
  }
  return rep;
}

RunReport report_run(const std::string& workspace_root, const std::string& run_id,
                     const std::string& out_dir) {
  LoadedRun r = load_run(workspace_root, run_id);

  RunReport rep;
  rep.summary = r.summary;
  rep.errors = r.errors;
  rep.text = format_summary_table(r.summary) + "\nError distribution (failed theorems):\n" +
             format_error_table(r.errors);

  json j;
  j["run"] = summary_to_json(r.summary);
  j["mode"] = r.manifest.mode;
  j["k"] = r.manifest.k;
  j["error_distribution"] = distribution_to_json(r.errors);
  rep.json = j.dump(2);

  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    write_text_file(fs::path(out_dir) / "report.txt", rep.text);
    write_text_file(fs::path(out_dir) / "report.json", rep.json);
  }
  return rep;
}

}  // namespace prooflab
