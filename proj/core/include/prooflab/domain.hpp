#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace prooflab {

// ---------------------------------------------------------------------------
// Enums shared across the pipeline.
// ---------------------------------------------------------------------------

enum class Severity { kError, kWarning, kInfo };

enum class FinishReason { kStop, kLength, kBackendError };

// Outcome of one generation+verification episode. Infrastructure failures of
// the verifier itself (toolchain_error) are deliberately not representable
// here; such attempts are never logged and get retried on resume.
enum class Verdict { kPass, kFail, kTimeout, kBackendError };

// The six-class failure taxonomy. kOther doubles as the fallback for
// timeouts, backend errors and anything the rule table does not match.
enum class ErrorClass {
  kUnsolvedGoals,
  kSyntaxError,
  kUnknownIdentifier,
  kTypeclassError,
  kTypeError,
  kOther,
};

std::string to_string(Severity s);
std::string to_string(FinishReason r);
std::string to_string(Verdict v);
std::string to_string(ErrorClass c);

std::optional<Severity> severity_from_string(const std::string& s);
std::optional<FinishReason> finish_reason_from_string(const std::string& s);
std::optional<Verdict> verdict_from_string(const std::string& s);
std::optional<ErrorClass> error_class_from_string(const std::string& s);

constexpr int kErrorClassCount = 6;
// All six classes, in taxonomy order.
const std::vector<ErrorClass>& all_error_classes();

// ---------------------------------------------------------------------------
// Records
// ---------------------------------------------------------------------------

// One compiler message. line/column refer to the candidate file.
struct Diagnostic {
  Severity severity = Severity::kError;
  int line = 1;      // 1-based
  int column = 0;    // 0-based
  std::string message;

  bool operator==(const Diagnostic&) const = default;
};

// One benchmark theorem. The statement is the full Lean signature up to but
// not including ":= by", stored verbatim (internal line breaks preserved).
struct TheoremRecord {
  std::string id;
  std::string statement;
  std::string source_tag;

  bool operator==(const TheoremRecord&) const = default;
};

// An ordered proof prefix. index 1 is always the empty skeleton. Lines carry
// no indentation; rendering applies it.
struct TacticSkeleton {
  int index = 1;
  std::vector<std::string> lines;

  bool empty() const { return lines.empty(); }
  bool operator==(const TacticSkeleton&) const = default;
};

// The unit of generation: (theorem, skeleton, optional hint) plus its slot
// in the schedule.
struct StructuredQuery {
  std::string theorem_id;
  TacticSkeleton skeleton;
  std::optional<std::string> hint;
  int attempt_index = 1;

  bool operator==(const StructuredQuery&) const = default;
};

// One generation+verification episode, exactly as logged.
struct AttemptRecord {
  std::string theorem_id;
  int attempt_index = 1;
  std::string prompt_text;
  std::string completion_text;
  FinishReason finish_reason = FinishReason::kStop;
  Verdict verdict = Verdict::kFail;
  std::vector<Diagnostic> diagnostics;
  std::optional<ErrorClass> error_class;  // present iff verdict is fail/timeout
  std::int64_t generation_ms = 0;
  std::int64_t verification_ms = 0;
  // Carries the transport/auth detail when the backend failed permanently.
  std::string backend_message;

  bool operator==(const AttemptRecord&) const = default;
};

// Per-run metadata written before the first attempt. compare() refuses runs
// whose benchmark hashes differ.
struct RunManifest {
  std::string run_id;
  std::string mode;  // "structured" | "baseline"
  int k = 16;
  int max_tokens = 1024;
  double temperature = 0.6;
  double top_p = 0.95;
  int timeout_seconds = 60;
  std::string backend;
  std::string model;
  bool early_stop = false;
  std::string toolchain_version;
  std::string library_commit;
  std::string started_at;  // ISO-8601 UTC
  std::string benchmark_path;
  std::string benchmark_hash;
  int benchmark_count = 0;
  std::string skeleton_hash;

  bool operator==(const RunManifest&) const = default;
};

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

struct ValidationIssue {
  std::string id;      // offending theorem id (may be empty for parse issues)
  std::string rule;    // short machine-readable rule name
  std::string detail;  // human-readable explanation

  bool operator==(const ValidationIssue&) const = default;
};

// Checks every TheoremRecord invariant: non-empty unique id, non-empty
// statement, no "sorry" token, no ":= by". Returns one issue per violation;
// empty result means the benchmark is valid.
std::vector<ValidationIssue> validate_benchmark(const std::vector<TheoremRecord>& records);

// Non-fatal lint: statements that appear to carry their own `open`
// declarations (the prompt header already opens the common namespaces).
std::vector<ValidationIssue> benchmark_warnings(const std::vector<TheoremRecord>& records);

// True if `text` contains "sorry" as a standalone token (not as part of a
// longer identifier).
bool has_sorry_token(const std::string& text);

// ---------------------------------------------------------------------------
// Serialization (line-delimited JSON). Parsers throw std::runtime_error on
// malformed input; serialize/parse round-trips are identity.
// ---------------------------------------------------------------------------

std::string theorem_to_json_line(const TheoremRecord& r);
TheoremRecord theorem_from_json_line(const std::string& line);

std::string attempt_to_json_line(const AttemptRecord& r);
AttemptRecord attempt_from_json_line(const std::string& line);

std::string manifest_to_json(const RunManifest& m);
RunManifest manifest_from_json(const std::string& text);

// Reads a benchmark file (one JSON record per line; blank lines ignored).
std::vector<TheoremRecord> load_benchmark(const std::string& path);

// FNV-1a 64-bit content hash, "fnv1a64:<16 hex digits>".
std::string fnv1a64_hex(const std::string& bytes);
std::string hash_file(const std::string& path);

}  // namespace prooflab
