#pragma once

#include <map>
#include <string>
#include <vector>

#include "prooflab/domain.hpp"

namespace prooflab {

struct ParsedDiagnostics {
  std::vector<Diagnostic> items;  // sorted by (line, column, input order)
  int skipped_lines = 0;          // lines that did not parse as diagnostics
};

// Parses the toolchain's line-delimited JSON output. A line yields a
// Diagnostic when it is a JSON object carrying a recognizable severity and a
// string message ("data" or "message"); position comes from pos.{line,column}
// or flat line/column fields and defaults to (1,0). Unknown extra fields are
// ignored, unparseable lines are skipped and counted, never fatal.
ParsedDiagnostics parse_diagnostics(const std::vector<std::string>& raw_lines);

// Ordered first-match rule table over the lowercased message:
//   "unsolved goals"                       -> unsolved_goals
//   "unknown identifier"/"unknown constant"-> unknown_identifier
//   "failed to synthesize"                 -> typeclass_error
//   "type mismatch"                        -> type_error
//   "unexpected token" or leading "expected" -> syntax_error
//   anything else                          -> other
// Total: every string maps to exactly one class.
ErrorClass classify_message(const std::string& message);

// Theorem-level classification for failure reporting: takes the lowest
// attempt_index whose diagnostics list is non-empty and classifies its first
// error-severity diagnostic; falls back to kOther when every attempt timed
// out or has no diagnostics. Throws std::invalid_argument if any attempt
// passed (callers must only hand in failed theorems).
ErrorClass classify_theorem_failure(const std::vector<AttemptRecord>& attempts);

struct ErrorDistribution {
  std::map<ErrorClass, int> counts;        // all six classes present
  int total_failures = 0;
  bool no_failures = false;
  std::map<ErrorClass, double> percent;    // unrounded, sums to 100 when non-empty
  std::map<ErrorClass, double> percent_1dp;  // rounded to one decimal for display
};

// Percentage distribution over failed theorems. Empty input yields an
// all-zero map flagged no_failures.
ErrorDistribution error_distribution(const std::map<std::string, ErrorClass>& classified);

}  // namespace prooflab
