#include "prooflab/leanrunner.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <stdexcept>

#include "json_io.hpp"
#include "prooflab/process.hpp"

namespace prooflab {

namespace fs = std::filesystem;
using jsonio::json;

std::string to_string(VerifyVerdict v) {
  switch (v) {
    case VerifyVerdict::kPass: return "pass";
    case VerifyVerdict::kFail: return "fail";
    case VerifyVerdict::kTimeout: return "timeout";
    case VerifyVerdict::kToolchainError: return "toolchain_error";
  }
  return "fail";
}

std::optional<VerifyVerdict> verify_verdict_from_string(const std::string& s) {
  if (s == "pass") return VerifyVerdict::kPass;
  if (s == "fail") return VerifyVerdict::kFail;
  if (s == "timeout") return VerifyVerdict::kTimeout;
  if (s == "toolchain_error") return VerifyVerdict::kToolchainError;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// sanitize_completion
// ---------------------------------------------------------------------------

namespace {

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

// Column-0 markers that open a new top-level declaration.
bool starts_new_declaration(const std::string& line) {
  static const char* kWordMarkers[] = {"theorem", "lemma", "example", "def", "import"};
  for (const char* kw : kWordMarkers) {
    const std::size_t len = std::strlen(kw);
    if (line.compare(0, len, kw) == 0 && (line.size() == len || !is_ident_char(line[len]))) {
      return true;
    }
  }
  return line.rfind("/-", 0) == 0 || line.rfind("--", 0) == 0 || line.rfind("```", 0) == 0;
}

bool whitespace_only(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

}  // namespace

std::string sanitize_completion(const std::string& completion) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  const bool ends_with_newline = !completion.empty() && completion.back() == '\n';
  while (start < completion.size()) {
    std::size_t nl = completion.find('\n', start);
    if (nl == std::string::npos) {
      lines.push_back(completion.substr(start));
      break;
    }
    lines.push_back(completion.substr(start, nl - start));
    start = nl + 1;
  }

  std::size_t keep = lines.size();
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (starts_new_declaration(lines[i])) {
      keep = i;
      break;
    }
  }
  while (keep > 0 && whitespace_only(lines[keep - 1])) --keep;
  if (keep == 0) return "";

  std::string out;
  for (std::size_t i = 0; i < keep; ++i) {
    out += lines[i];
    // A line keeps the newline it originally had.
    if (i + 1 < lines.size() || ends_with_newline) out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// assemble
// ---------------------------------------------------------------------------

CandidateFile assemble(const TheoremRecord& theorem, const ScheduleEntry& entry,
                       const std::string& sanitized_completion,
                       const std::string& workspace_root, const std::string& run_id) {
  CandidateFile file;
  file.theorem_id = theorem.id;
  file.attempt_index = entry.attempt_index;
  file.file_text = render_prompt(theorem, entry) + sanitized_completion;

  const fs::path dir = fs::path(workspace_root) / run_id / theorem.id;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw std::runtime_error("assemble: cannot create '" + dir.string() + "': " + ec.message());
  }
  const fs::path path = dir / ("attempt_" + std::to_string(entry.attempt_index) + ".lean");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("assemble: cannot write '" + path.string() + "'");
  out << file.file_text;
  out.close();
  if (!out) throw std::runtime_error("assemble: write failed for '" + path.string() + "'");
  file.file_path = path.string();
  return file;
}

// ---------------------------------------------------------------------------
// Pass criterion helpers
// ---------------------------------------------------------------------------

bool proof_body_has_sorry(const std::string& file_text) {
  const std::size_t marker = file_text.find(":= by");
  const std::string body =
      marker == std::string::npos ? file_text : file_text.substr(marker);
  return has_sorry_token(body);
}

namespace {

bool any_line_mentions_sorry(const std::vector<std::string>& raw_lines) {
  for (const auto& line : raw_lines) {
    if (line.find("sorry") != std::string::npos) return true;
  }
  return false;
}

// Demotes pass verdicts that violate the sorry rule.
void apply_sorry_rule(VerificationOutcome& outcome, const CandidateFile& file) {
  if (outcome.verdict != VerifyVerdict::kPass) return;
  if (proof_body_has_sorry(file.file_text) ||
      any_line_mentions_sorry(outcome.raw_diagnostic_lines)) {
    outcome.verdict = VerifyVerdict::kFail;
  }
}

// ---------------------------------------------------------------------------
// Mock verifier
// ---------------------------------------------------------------------------

class MockVerifier final : public Verifier {
 public:
  MockVerifier(const std::string& fixture_path, int timeout_seconds)
      : path_(fixture_path), timeout_ms_(static_cast<std::int64_t>(timeout_seconds) * 1000) {
    std::ifstream in(fixture_path, std::ios::binary);
    if (!in) {
      throw std::runtime_error("mock verifier: cannot open fixture '" + fixture_path + "'");
    }
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      json j = json::parse(line, nullptr, false);
      if (j.is_discarded() || !j.is_object()) {
        throw std::runtime_error("mock verifier fixture '" + fixture_path + "' line " +
                                 std::to_string(line_no) + ": malformed JSON");
      }
      VerificationOutcome o;
      auto v = verify_verdict_from_string(jsonio::get_string(j, "verdict", "fail"));
      if (!v) {
        throw std::runtime_error("mock verifier fixture '" + fixture_path + "' line " +
                                 std::to_string(line_no) + ": bad verdict");
      }
      o.verdict = *v;
      if (j.contains("exit_code") && j["exit_code"].is_number_integer()) {
        o.exit_code = j["exit_code"].get<int>();
      } else {
        o.exit_code = o.verdict == VerifyVerdict::kPass ? 0 : 1;
      }
      if (j.contains("diagnostic_lines") && j["diagnostic_lines"].is_array()) {
        for (const auto& dl : j["diagnostic_lines"]) {
          if (dl.is_string()) o.raw_diagnostic_lines.push_back(dl.get<std::string>());
        }
      }
      o.wall_ms = j.value("wall_ms", std::int64_t{1});
      if (o.verdict == VerifyVerdict::kTimeout && o.wall_ms < timeout_ms_) {
        o.wall_ms = timeout_ms_;
      }
      const std::string tid = jsonio::require_string(j, "theorem_id", "mock verifier fixture");
      const int idx = j.value("attempt_index", 0);
      script_[{tid, idx}] = std::move(o);
    }
  }

  VerificationOutcome verify(const CandidateFile& file) override {
    VerificationOutcome outcome;
    auto it = script_.find({file.theorem_id, file.attempt_index});
    if (it != script_.end()) {
      outcome = it->second;
    } else {
      outcome.verdict = VerifyVerdict::kFail;  // defined fallback: fail, no diagnostics
      outcome.exit_code = 1;
      outcome.wall_ms = 1;
    }
    apply_sorry_rule(outcome, file);
    return outcome;
  }

  std::string descriptor() const override { return "mock:" + path_; }

 private:
  std::string path_;
  std::int64_t timeout_ms_;
  std::map<std::pair<std::string, int>, VerificationOutcome> script_;
};

// ---------------------------------------------------------------------------
// Lake verifier: runs the pinned toolchain's compile command under a timeout.
// ---------------------------------------------------------------------------

std::vector<std::string> split_command(const std::string& command) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : command) {
    if (c == ' ' || c == '\t') {
      if (!cur.empty()) {
        parts.push_back(cur);
        cur.clear();
      }
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) parts.push_back(cur);
  return parts;
}

class LakeVerifier final : public Verifier {
 public:
  explicit LakeVerifier(VerifierDescriptor d) : d_(std::move(d)) {
    if (d_.workspace.empty() || !fs::is_directory(d_.workspace)) {
      throw std::runtime_error("lake verifier: workspace '" + d_.workspace +
                               "' does not exist");
    }
    argv_template_ = split_command(d_.command);
    if (argv_template_.empty()) {
      throw std::runtime_error("lake verifier: empty command template");
    }
  }

  VerificationOutcome verify(const CandidateFile& file) override {
    std::vector<std::string> argv = argv_template_;
    const std::string abs_path = fs::absolute(file.file_path).string();
    bool substituted = false;
    for (auto& arg : argv) {
      std::size_t pos;
      while ((pos = arg.find("{file}")) != std::string::npos) {
        arg.replace(pos, 6, abs_path);
        substituted = true;
      }
    }
    if (!substituted) argv.push_back(abs_path);

    const auto proc =
        run_process(argv, d_.workspace, static_cast<std::int64_t>(d_.timeout_seconds) * 1000);

    VerificationOutcome outcome;
    outcome.wall_ms = proc.wall_ms;
    outcome.raw_diagnostic_lines = proc.output_lines;
    if (proc.spawn_failed) {
      outcome.verdict = VerifyVerdict::kToolchainError;
      outcome.note = proc.spawn_error;
      return outcome;
    }
    if (proc.timed_out) {
      outcome.verdict = VerifyVerdict::kTimeout;
      return outcome;
    }
    outcome.exit_code = proc.exit_code;
    outcome.verdict = proc.exit_code == 0 ? VerifyVerdict::kPass : VerifyVerdict::kFail;
    apply_sorry_rule(outcome, file);
    return outcome;
  }

  std::string descriptor() const override {
    return "lake:" + d_.workspace + " (" + d_.command + ")";
  }

 private:
  VerifierDescriptor d_;
  std::vector<std::string> argv_template_;
};

}  // namespace

VerifierDescriptor verifier_descriptor_from_json(const std::string& text) {
  json j = jsonio::parse_or_throw(text, "verifier descriptor");
  VerifierDescriptor d;
  d.kind = jsonio::require_string(j, "kind", "verifier descriptor");
  d.path = jsonio::get_string(j, "path");
  d.workspace = jsonio::get_string(j, "workspace");
  d.command = jsonio::get_string(j, "command", "lake env lean --json {file}");
  d.timeout_seconds = j.value("timeout_seconds", 60);
  return d;
}

std::unique_ptr<Verifier> make_verifier(const VerifierDescriptor& descriptor) {
  if (descriptor.kind == "mock") {
    return std::make_unique<MockVerifier>(descriptor.path, descriptor.timeout_seconds);
  }
  if (descriptor.kind == "lake") {
    return std::make_unique<LakeVerifier>(descriptor);
  }
  throw std::runtime_error("unknown verifier kind '" + descriptor.kind + "'");
}

std::unique_ptr<Verifier> make_verifier(const std::string& descriptor_json) {
  return make_verifier(verifier_descriptor_from_json(descriptor_json));
}

}  // namespace prooflab
