#pragma once

#include <mutex>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "prooflab/domain.hpp"

namespace prooflab {

// Reads an append-only attempt log, skipping blank and malformed lines (a
// crash can leave a half-written tail; those attempts simply rerun on
// resume). malformed_lines reports how many were skipped.
std::vector<AttemptRecord> read_attempt_log(const std::string& path, int* malformed_lines = nullptr);

// Serialized appender owning a run's attempt log. Duplicate
// (theorem_id, attempt_index) keys are refused so the log stays replayable;
// keys already on disk are loaded at construction, which is what makes
// rerunning a resume. Safe for concurrent append() calls.
class AttemptLogWriter {
 public:
  explicit AttemptLogWriter(std::string path);

  // Returns false (and writes nothing) when the key is already logged.
  bool append(const AttemptRecord& record);

  bool contains(const std::string& theorem_id, int attempt_index) const;
  // Logged attempt indices for one theorem, plus whether any of them passed.
  std::set<int> logged_attempts(const std::string& theorem_id) const;
  bool has_pass(const std::string& theorem_id) const;

  const std::string& path() const { return path_; }
  std::size_t size() const;

 private:
  std::string path_;
  mutable std::mutex mu_;
  std::set<std::pair<std::string, int>> seen_;
  std::set<std::string> passed_;
  bool needs_leading_newline_ = false;
};

}  // namespace prooflab
