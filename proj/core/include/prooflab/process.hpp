#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace prooflab {

struct ProcessResult {
  int exit_code = -1;
  bool timed_out = false;
  bool spawn_failed = false;
  std::string spawn_error;
  std::vector<std::string> output_lines;  // stdout+stderr, split on newlines
  std::int64_t wall_ms = 0;
};

// Runs argv[0] with the given arguments in its own process group, capturing
// stdout and stderr merged. On timeout the entire process group is killed
// with SIGKILL so compiler children cannot linger. No shell is involved.
ProcessResult run_process(const std::vector<std::string>& argv, const std::string& cwd,
                          std::int64_t timeout_ms);

}  // namespace prooflab
