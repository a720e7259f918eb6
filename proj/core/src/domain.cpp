#include "prooflab/domain.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "json_io.hpp"

namespace prooflab {

using jsonio::json;

// ---------------------------------------------------------------------------
// Enum names
// ---------------------------------------------------------------------------

std::string to_string(Severity s) {
  switch (s) {
    case Severity::kError: return "error";
    case Severity::kWarning: return "warning";
    case Severity::kInfo: return "info";
  }
  return "info";
}

std::string to_string(FinishReason r) {
  switch (r) {
    case FinishReason::kStop: return "stop";
    case FinishReason::kLength: return "length";
    case FinishReason::kBackendError: return "backend_error";
  }
  return "stop";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kPass: return "pass";
    case Verdict::kFail: return "fail";
    case Verdict::kTimeout: return "timeout";
    case Verdict::kBackendError: return "backend_error";
  }
  return "fail";
}

std::string to_string(ErrorClass c) {
  switch (c) {
    case ErrorClass::kUnsolvedGoals: return "unsolved_goals";
    case ErrorClass::kSyntaxError: return "syntax_error";
    case ErrorClass::kUnknownIdentifier: return "unknown_identifier";
    case ErrorClass::kTypeclassError: return "typeclass_error";
    case ErrorClass::kTypeError: return "type_error";
    case ErrorClass::kOther: return "other";
  }
  return "other";
}

std::optional<Severity> severity_from_string(const std::string& s) {
  if (s == "error") return Severity::kError;
  if (s == "warning") return Severity::kWarning;
  if (s == "info" || s == "information") return Severity::kInfo;
  return std::nullopt;
}

std::optional<FinishReason> finish_reason_from_string(const std::string& s) {
  if (s == "stop") return FinishReason::kStop;
  if (s == "length") return FinishReason::kLength;
  if (s == "backend_error") return FinishReason::kBackendError;
  return std::nullopt;
}

std::optional<Verdict> verdict_from_string(const std::string& s) {
  if (s == "pass") return Verdict::kPass;
  if (s == "fail") return Verdict::kFail;
  if (s == "timeout") return Verdict::kTimeout;
  if (s == "backend_error") return Verdict::kBackendError;
  return std::nullopt;
}

std::optional<ErrorClass> error_class_from_string(const std::string& s) {
  for (ErrorClass c : all_error_classes()) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

const std::vector<ErrorClass>& all_error_classes() {
  static const std::vector<ErrorClass> kClasses = {
      ErrorClass::kUnsolvedGoals,   ErrorClass::kSyntaxError,
      ErrorClass::kUnknownIdentifier, ErrorClass::kTypeclassError,
      ErrorClass::kTypeError,       ErrorClass::kOther,
  };
  return kClasses;
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

namespace {

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

}  // namespace

bool has_sorry_token(const std::string& text) {
  static const std::string kSorry = "sorry";
  std::size_t pos = 0;
  while ((pos = text.find(kSorry, pos)) != std::string::npos) {
    const bool left_ok = pos == 0 || !is_ident_char(text[pos - 1]);
    const std::size_t end = pos + kSorry.size();
    const bool right_ok = end >= text.size() || !is_ident_char(text[end]);
    if (left_ok && right_ok) return true;
    pos = end;
  }
  return false;
}

std::vector<ValidationIssue> validate_benchmark(const std::vector<TheoremRecord>& records) {
  std::vector<ValidationIssue> issues;
  std::unordered_map<std::string, int> id_count;
  for (const auto& r : records) id_count[r.id]++;

  std::unordered_set<std::string> dup_reported;
  for (const auto& r : records) {
    if (r.id.empty()) {
      issues.push_back({r.id, "empty_id", "record has an empty id"});
    } else if (id_count[r.id] > 1 && dup_reported.insert(r.id).second) {
      issues.push_back({r.id, "duplicate_id", "duplicate id \"" + r.id + "\""});
    }
    if (r.statement.empty()) {
      issues.push_back({r.id, "empty_statement", "id \"" + r.id + "\": statement is empty"});
      continue;
    }
    if (has_sorry_token(r.statement)) {
      issues.push_back({r.id, "contains_sorry",
                        "id \"" + r.id + "\": statement contains \"sorry\""});
    }
    if (r.statement.find(":= by") != std::string::npos) {
      issues.push_back({r.id, "contains_by",
                        "id \"" + r.id + "\": statement already contains \":= by\" "
                        "(the harness appends it)"});
    }
  }
  return issues;
}

std::vector<ValidationIssue> benchmark_warnings(const std::vector<TheoremRecord>& records) {
  std::vector<ValidationIssue> warnings;
  for (const auto& r : records) {
    std::istringstream in(r.statement);
    std::string line;
    while (std::getline(in, line)) {
      std::size_t i = line.find_first_not_of(" \t");
      if (i != std::string::npos && line.compare(i, 5, "open ") == 0) {
        warnings.push_back({r.id, "statement_opens_namespace",
                            "id \"" + r.id + "\": statement carries its own `open` "
                            "declaration; the prompt header already opens "
                            "BigOperators Real Nat Topology"});
        break;
      }
    }
  }
  return warnings;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

std::string theorem_to_json_line(const TheoremRecord& r) {
  json j;
  j["id"] = r.id;
  j["statement"] = r.statement;
  j["source_tag"] = r.source_tag;
  return jsonio::dump_lossy(j);
}

TheoremRecord theorem_from_json_line(const std::string& line) {
  json j = jsonio::parse_or_throw(line, "theorem record");
  TheoremRecord r;
  r.id = jsonio::require_string(j, "id", "theorem record");
  r.statement = jsonio::require_string(j, "statement", "theorem record");
  r.source_tag = jsonio::get_string(j, "source_tag");
  return r;
}

namespace {

json diagnostic_to_json(const Diagnostic& d) {
  json j;
  j["severity"] = to_string(d.severity);
  j["line"] = d.line;
  j["column"] = d.column;
  j["message"] = d.message;
  return j;
}

Diagnostic diagnostic_from_json(const json& j) {
  Diagnostic d;
  auto sev = severity_from_string(jsonio::get_string(j, "severity", "error"));
  d.severity = sev.value_or(Severity::kError);
  d.line = j.value("line", 1);
  d.column = j.value("column", 0);
  d.message = jsonio::get_string(j, "message");
  return d;
}

}  // namespace

std::string attempt_to_json_line(const AttemptRecord& r) {
  json j;
  j["theorem_id"] = r.theorem_id;
  j["attempt_index"] = r.attempt_index;
  j["prompt"] = r.prompt_text;
  j["completion"] = r.completion_text;
  j["finish_reason"] = to_string(r.finish_reason);
  j["verdict"] = to_string(r.verdict);
  j["diagnostics"] = json::array();
  for (const auto& d : r.diagnostics) j["diagnostics"].push_back(diagnostic_to_json(d));
  if (r.error_class) j["error_class"] = to_string(*r.error_class);
  j["generation_ms"] = r.generation_ms;
  j["verification_ms"] = r.verification_ms;
  if (!r.backend_message.empty()) j["backend_message"] = r.backend_message;
  return jsonio::dump_lossy(j);
}

AttemptRecord attempt_from_json_line(const std::string& line) {
  json j = jsonio::parse_or_throw(line, "attempt record");
  AttemptRecord r;
  r.theorem_id = jsonio::require_string(j, "theorem_id", "attempt record");
  if (!j.contains("attempt_index") || !j["attempt_index"].is_number_integer()) {
    throw std::runtime_error("attempt record: missing attempt_index");
  }
  r.attempt_index = j["attempt_index"].get<int>();
  r.prompt_text = jsonio::get_string(j, "prompt");
  r.completion_text = jsonio::get_string(j, "completion");
  auto fr = finish_reason_from_string(jsonio::get_string(j, "finish_reason", "stop"));
  if (!fr) throw std::runtime_error("attempt record: bad finish_reason");
  r.finish_reason = *fr;
  auto v = verdict_from_string(jsonio::get_string(j, "verdict", ""));
  if (!v) throw std::runtime_error("attempt record: bad verdict");
  r.verdict = *v;
  if (j.contains("diagnostics") && j["diagnostics"].is_array()) {
    for (const auto& dj : j["diagnostics"]) r.diagnostics.push_back(diagnostic_from_json(dj));
  }
  if (auto ec = jsonio::opt_string(j, "error_class")) {
    auto c = error_class_from_string(*ec);
    if (!c) throw std::runtime_error("attempt record: bad error_class");
    r.error_class = *c;
  }
  r.generation_ms = j.value("generation_ms", std::int64_t{0});
  r.verification_ms = j.value("verification_ms", std::int64_t{0});
  r.backend_message = jsonio::get_string(j, "backend_message");
  return r;
}

std::string manifest_to_json(const RunManifest& m) {
  json j;
  j["run_id"] = m.run_id;
  j["mode"] = m.mode;
  j["k"] = m.k;
  j["max_tokens"] = m.max_tokens;
  j["temperature"] = m.temperature;
  j["top_p"] = m.top_p;
  j["timeout_seconds"] = m.timeout_seconds;
  j["backend"] = m.backend;
  j["model"] = m.model;
  j["early_stop"] = m.early_stop;
  j["toolchain_version"] = m.toolchain_version;
  j["library_commit"] = m.library_commit;
  j["started_at"] = m.started_at;
  j["benchmark_path"] = m.benchmark_path;
  j["benchmark_hash"] = m.benchmark_hash;
  j["benchmark_count"] = m.benchmark_count;
  j["skeleton_hash"] = m.skeleton_hash;
  return j.dump(2);
}

RunManifest manifest_from_json(const std::string& text) {
  json j = jsonio::parse_or_throw(text, "run manifest");
  RunManifest m;
  m.run_id = jsonio::require_string(j, "run_id", "run manifest");
  m.mode = jsonio::get_string(j, "mode", "structured");
  m.k = j.value("k", 16);
  m.max_tokens = j.value("max_tokens", 1024);
  m.temperature = j.value("temperature", 0.6);
  m.top_p = j.value("top_p", 0.95);
  m.timeout_seconds = j.value("timeout_seconds", 60);
  m.backend = jsonio::get_string(j, "backend");
  m.model = jsonio::get_string(j, "model");
  m.early_stop = j.value("early_stop", false);
  m.toolchain_version = jsonio::get_string(j, "toolchain_version");
  m.library_commit = jsonio::get_string(j, "library_commit");
  m.started_at = jsonio::get_string(j, "started_at");
  m.benchmark_path = jsonio::get_string(j, "benchmark_path");
  m.benchmark_hash = jsonio::get_string(j, "benchmark_hash");
  m.benchmark_count = j.value("benchmark_count", 0);
  m.skeleton_hash = jsonio::get_string(j, "skeleton_hash");
  return m;
}

std::vector<TheoremRecord> load_benchmark(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open benchmark file '" + path + "'");
  std::vector<TheoremRecord> records;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      records.push_back(theorem_from_json_line(line));
    } catch (const std::exception& e) {
      throw std::runtime_error("benchmark file '" + path + "' line " +
                               std::to_string(line_no) + ": " + e.what());
    }
  }
  return records;
}

std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string hash_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file for hashing: '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return fnv1a64_hex(ss.str());
}

}  // namespace prooflab
