#pragma once

#include <string>

#include "prooflab/diagnostics.hpp"
#include "prooflab/domain.hpp"
#include "prooflab/generation.hpp"
#include "prooflab/leanrunner.hpp"
#include "prooflab/schedule.hpp"
#include "prooflab/stats.hpp"

namespace prooflab {

// Full run configuration; the defaults reproduce the pinned evaluation
// settings (k=16, 1024 tokens, temperature 0.6, top-p 0.95, 60 s timeout).
struct RunConfig {
  std::string benchmark_path;
  std::string workspace_root = "workspace";
  int k = 16;
  ScheduleMode mode = ScheduleMode::kStructured;
  GenerationParams generation;
  BackendDescriptor backend;
  VerifierDescriptor verifier;
  int timeout_seconds = 60;
  int max_parallel_theorems = 4;
  int max_parallel_generations = 4;
  int max_parallel_verifications = 4;
  bool early_stop = false;
  std::string run_id;         // empty -> generated from timestamp
  std::string skeleton_file;  // empty -> builtin skeletons
  std::string toolchain_version = "Lean 4 v4.27.0-rc1";
  std::string library_commit = "3c327186024184e988ebbcae1b7d7795eaacdee3";
  int toolchain_error_limit = 3;
  bool quiet = false;  // suppress per-theorem progress on stderr
};

// Parses the JSON config file; missing fields keep their defaults. Throws
// std::runtime_error on unreadable files or invalid values.
RunConfig load_run_config(const std::string& path);
RunConfig run_config_from_json(const std::string& text);

struct RunResult {
  std::string run_id;
  bool aborted = false;        // toolchain errors exceeded the tolerance
  std::string abort_reason;
  int attempts_logged = 0;     // appended by this invocation
  int attempts_skipped = 0;    // already present (resume) or early-stopped
};

// Executes the schedule over the whole benchmark: per theorem, attempts run
// in order (generate -> sanitize -> assemble -> verify -> classify -> log);
// theorems run on a bounded worker pool with separate admission limits for
// generation and verification. The manifest is written before the first
// attempt; attempts already in the log are skipped, so rerunning with the
// same run_id resumes an interrupted run. Throws std::runtime_error when the
// benchmark fails validation or the backend/verifier cannot be constructed.
RunResult run(const RunConfig& config);

struct ComparisonReport {
  RunSummary treat;  // run_a
  RunSummary base;   // run_b
  PairedComparison paired;
  ErrorDistribution errors_treat;
  ErrorDistribution errors_base;
  std::string text;  // human-readable tables
  std::string json;  // machine-readable document
};

// Paired comparison of two completed runs (a = treatment, b = baseline).
// Refuses (std::runtime_error) when the manifests' benchmark hashes differ.
// When out_dir is non-empty, writes comparison.txt and comparison.json.
ComparisonReport compare_runs(const std::string& workspace_root, const std::string& run_a,
                              const std::string& run_b, const std::string& out_dir = "");

struct RunReport {
  RunSummary summary;
  ErrorDistribution errors;
  std::string text;
  std::string json;
};

// Per-run pass@k plus the error-class distribution over failed theorems.
// When out_dir is non-empty, writes report.txt and report.json.
RunReport report_run(const std::string& workspace_root, const std::string& run_id,
                     const std::string& out_dir = "");

// Loads <workspace>/<run_id>/manifest.json. Throws when missing.
RunManifest load_manifest(const std::string& workspace_root, const std::string& run_id);

std::string attempt_log_path(const std::string& workspace_root, const std::string& run_id);

}  // namespace prooflab
