#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "prooflab/domain.hpp"
#include "prooflab/schedule.hpp"

namespace prooflab {

// A fully assembled candidate proof file on disk.
struct CandidateFile {
  std::string theorem_id;
  int attempt_index = 1;
  std::string file_text;  // render_prompt output + sanitized completion
  std::string file_path;  // workspace/<run_id>/<theorem_id>/attempt_<index>.lean
};

enum class VerifyVerdict { kPass, kFail, kTimeout, kToolchainError };

std::string to_string(VerifyVerdict v);
std::optional<VerifyVerdict> verify_verdict_from_string(const std::string& s);

struct VerificationOutcome {
  VerifyVerdict verdict = VerifyVerdict::kFail;
  std::optional<int> exit_code;
  std::vector<std::string> raw_diagnostic_lines;
  std::int64_t wall_ms = 0;
  std::string note;  // toolchain_error detail
};

// Truncates model over-generation at the first line that opens a new
// top-level declaration: column-0 "theorem", "lemma", "example", "def",
// "import", a comment opener "/-" or "--", or a code fence "```". Trailing
// whitespace-only lines are stripped. May return empty text (the skeleton
// alone can close the goal).
std::string sanitize_completion(const std::string& completion);

// Joins prompt and sanitized completion and writes the candidate under
// <workspace_root>/<run_id>/<theorem_id>/attempt_<index>.lean. Throws
// std::runtime_error when the workspace is not writable.
CandidateFile assemble(const TheoremRecord& theorem, const ScheduleEntry& entry,
                       const std::string& sanitized_completion,
                       const std::string& workspace_root, const std::string& run_id);

// Proof verifier. verify() never mutates the candidate file; a pass requires
// exit code 0, no "sorry" token in the proof body, and no diagnostic whose
// message mentions sorry.
class Verifier {
 public:
  virtual ~Verifier() = default;
  virtual VerificationOutcome verify(const CandidateFile& file) = 0;
  virtual std::string descriptor() const = 0;
};

// Parsed verifier configuration.
//   mock: {"kind":"mock","path":"fixture.jsonl","timeout_seconds":60}
//         fixture lines: {theorem_id, attempt_index, verdict, exit_code?,
//         diagnostic_lines?: [raw json strings], wall_ms?}; unknown keys
//         fail with empty diagnostics.
//   lake: {"kind":"lake","workspace":"/path/to/pinned/mathlib",
//          "command":"lake env lean --json {file}","timeout_seconds":60}
//         {file} expands to the absolute candidate path; the command is
//         whitespace-split and run without a shell, cwd = workspace.
struct VerifierDescriptor {
  std::string kind;  // "mock" | "lake"
  std::string path;  // mock fixture path
  std::string workspace;
  std::string command = "lake env lean --json {file}";
  int timeout_seconds = 60;
};

VerifierDescriptor verifier_descriptor_from_json(const std::string& text);

// Throws std::runtime_error for unknown kinds, missing fixtures, or a
// missing toolchain workspace.
std::unique_ptr<Verifier> make_verifier(const VerifierDescriptor& descriptor);
std::unique_ptr<Verifier> make_verifier(const std::string& descriptor_json);

// Shared pass criterion: locates the proof body (everything after the single
// ":= by" marker) and demotes a pass when it contains a sorry token or any
// diagnostic message mentions sorry.
bool proof_body_has_sorry(const std::string& file_text);

}  // namespace prooflab
