#include "prooflab/diagnostics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

#include "json_io.hpp"

namespace prooflab {

using jsonio::json;

namespace {

std::string to_lower(const std::string& s) {
  std::string out = s;
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

ParsedDiagnostics parse_diagnostics(const std::vector<std::string>& raw_lines) {
  ParsedDiagnostics result;
  struct Keyed {
    Diagnostic d;
    std::size_t input_order;
  };
  std::vector<Keyed> keyed;

  for (std::size_t i = 0; i < raw_lines.size(); ++i) {
    const std::string& line = raw_lines[i];
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;  // blank, not counted
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      result.skipped_lines++;
      continue;
    }
    auto sev = severity_from_string(jsonio::get_string(j, "severity"));
    std::string message = jsonio::get_string(j, "data");
    if (message.empty()) message = jsonio::get_string(j, "message");
    if (!sev || message.empty()) {
      result.skipped_lines++;
      continue;
    }
    Diagnostic d;
    d.severity = *sev;
    d.message = message;
    if (j.contains("pos") && j["pos"].is_object()) {
      d.line = j["pos"].value("line", 1);
      d.column = j["pos"].value("column", 0);
    } else {
      d.line = j.value("line", 1);
      d.column = j.value("column", 0);
    }
    if (d.line < 1) d.line = 1;
    if (d.column < 0) d.column = 0;
    keyed.push_back({std::move(d), i});
  }

  std::stable_sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
    if (a.d.line != b.d.line) return a.d.line < b.d.line;
    return a.d.column < b.d.column;
  });
  result.items.reserve(keyed.size());
  for (auto& k : keyed) result.items.push_back(std::move(k.d));
  return result;
}

ErrorClass classify_message(const std::string& message) {
  const std::string m = to_lower(message);
  if (m.find("unsolved goals") != std::string::npos) return ErrorClass::kUnsolvedGoals;
  if (m.find("unknown identifier") != std::string::npos ||
      m.find("unknown constant") != std::string::npos) {
    return ErrorClass::kUnknownIdentifier;
  }
  if (m.find("failed to synthesize") != std::string::npos) return ErrorClass::kTypeclassError;
  if (m.find("type mismatch") != std::string::npos) return ErrorClass::kTypeError;
  if (m.find("unexpected token") != std::string::npos || m.rfind("expected", 0) == 0) {
    return ErrorClass::kSyntaxError;
  }
  return ErrorClass::kOther;
}

ErrorClass classify_theorem_failure(const std::vector<AttemptRecord>& attempts) {
  for (const auto& a : attempts) {
    if (a.verdict == Verdict::kPass) {
      throw std::invalid_argument(
          "classify_theorem_failure: theorem has a passing attempt (" + a.theorem_id +
          " attempt " + std::to_string(a.attempt_index) + ")");
    }
  }
  std::vector<const AttemptRecord*> ordered;
  ordered.reserve(attempts.size());
  for (const auto& a : attempts) ordered.push_back(&a);
  std::sort(ordered.begin(), ordered.end(), [](const AttemptRecord* a, const AttemptRecord* b) {
    return a->attempt_index < b->attempt_index;
  });

  for (const AttemptRecord* a : ordered) {
    if (a->diagnostics.empty()) continue;
    for (const auto& d : a->diagnostics) {
      if (d.severity == Severity::kError) return classify_message(d.message);
    }
    return ErrorClass::kOther;  // diagnostics present but none error-severity
  }
  return ErrorClass::kOther;  // all attempts timed out or carried no diagnostics
}

ErrorDistribution error_distribution(const std::map<std::string, ErrorClass>& classified) {
  ErrorDistribution dist;
  for (ErrorClass c : all_error_classes()) {
    dist.counts[c] = 0;
    dist.percent[c] = 0.0;
    dist.percent_1dp[c] = 0.0;
  }
  dist.total_failures = static_cast<int>(classified.size());
  if (classified.empty()) {
    dist.no_failures = true;
    return dist;
  }
  for (const auto& [id, c] : classified) dist.counts[c]++;
  for (ErrorClass c : all_error_classes()) {
    const double pct = 100.0 * dist.counts[c] / dist.total_failures;
    dist.percent[c] = pct;
    dist.percent_1dp[c] = std::round(pct * 10.0) / 10.0;
  }
  return dist;
}

}  // namespace prooflab
