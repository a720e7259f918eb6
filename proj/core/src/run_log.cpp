#include "prooflab/run_log.hpp"

#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace prooflab {

namespace fs = std::filesystem;

std::vector<AttemptRecord> read_attempt_log(const std::string& path, int* malformed_lines) {
  std::vector<AttemptRecord> records;
  int malformed = 0;
  std::ifstream in(path, std::ios::binary);
  if (in) {
    std::string line;
    while (std::getline(in, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      try {
        records.push_back(attempt_from_json_line(line));
      } catch (const std::exception&) {
        ++malformed;
      }
    }
  }
  if (malformed_lines) *malformed_lines = malformed;
  return records;
}

AttemptLogWriter::AttemptLogWriter(std::string path) : path_(std::move(path)) {
  for (const auto& r : read_attempt_log(path_)) {
    seen_.insert({r.theorem_id, r.attempt_index});
    if (r.verdict == Verdict::kPass) passed_.insert(r.theorem_id);
  }
  // A crash mid-write can leave the file without a trailing newline; the
  // next append must not glue onto the partial record.
  std::ifstream in(path_, std::ios::binary);
  if (in) {
    in.seekg(0, std::ios::end);
    const auto size = in.tellg();
    if (size > 0) {
      in.seekg(-1, std::ios::end);
      char last = '\n';
      in.get(last);
      needs_leading_newline_ = last != '\n';
    }
  }
}

bool AttemptLogWriter::append(const AttemptRecord& record) {
  const std::string line = attempt_to_json_line(record);
  std::lock_guard<std::mutex> lock(mu_);
  if (!seen_.insert({record.theorem_id, record.attempt_index}).second) return false;
  std::ofstream out(path_, std::ios::binary | std::ios::app);
  if (!out) throw std::runtime_error("attempt log: cannot open '" + path_ + "' for append");
  if (needs_leading_newline_) {
    out << '\n';
    needs_leading_newline_ = false;
  }
  out << line << '\n';
  out.flush();
  if (!out) throw std::runtime_error("attempt log: write failed for '" + path_ + "'");
  if (record.verdict == Verdict::kPass) passed_.insert(record.theorem_id);
  return true;
}

bool AttemptLogWriter::contains(const std::string& theorem_id, int attempt_index) const {
  std::lock_guard<std::mutex> lock(mu_);
  return seen_.count({theorem_id, attempt_index}) > 0;
}

std::set<int> AttemptLogWriter::logged_attempts(const std::string& theorem_id) const {
  std::lock_guard<std::mutex> lock(mu_);
  std::set<int> out;
  for (auto it = seen_.lower_bound({theorem_id, 0});
       it != seen_.end() && it->first == theorem_id; ++it) {
    out.insert(it->second);
  }
  return out;
}

bool AttemptLogWriter::has_pass(const std::string& theorem_id) const {
  std::lock_guard<std::mutex> lock(mu_);
  return passed_.count(theorem_id) > 0;
}

std::size_t AttemptLogWriter::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return seen_.size();
}

}  // namespace prooflab
