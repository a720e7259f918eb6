#include "prooflab/schedule.hpp"

#include <fstream>
#include <stdexcept>

#include "json_io.hpp"

namespace prooflab {

using jsonio::json;

std::string to_string(ScheduleMode m) {
  return m == ScheduleMode::kStructured ? "structured" : "baseline";
}

std::optional<ScheduleMode> schedule_mode_from_string(const std::string& s) {
  if (s == "structured") return ScheduleMode::kStructured;
  if (s == "baseline") return ScheduleMode::kBaseline;
  return std::nullopt;
}

const std::vector<TacticSkeleton>& builtin_skeletons() {
  static const std::vector<TacticSkeleton> kSkeletons = {
      {1, {}},
      {2, {"simp"}},
      {3, {"intro"}},
      {4, {"intros"}},
      {5, {"constructor"}},
      {6, {"refine ?_"}},
      {7, {"refine ⟨?_, ?_⟩"}},
      {8, {"aesop"}},
      {9, {"norm_num"}},
      {10, {"linarith"}},
      {11, {"nlinarith"}},
      {12, {"ring"}},
      {13, {"ring_nf"}},
      {14, {"simp", "try aesop"}},
      {15, {"simp", "try nlinarith"}},
  };
  return kSkeletons;
}

const std::string& canonical_hint() {
  static const std::string kHint =
      "Start by simplifying the goal and hypotheses using simp.";
  return kHint;
}

std::vector<std::string> validate_skeleton_set(const std::vector<TacticSkeleton>& skeletons) {
  std::vector<std::string> errors;
  if (skeletons.empty()) {
    errors.push_back("skeleton set is empty");
    return errors;
  }
  for (std::size_t i = 0; i < skeletons.size(); ++i) {
    const auto& s = skeletons[i];
    const std::string where = "skeleton " + std::to_string(i + 1);
    if (s.index != static_cast<int>(i + 1)) {
      errors.push_back(where + ": index " + std::to_string(s.index) +
                       " out of order (expected " + std::to_string(i + 1) + ")");
    }
    for (const auto& line : s.lines) {
      if (line.find('\n') != std::string::npos) {
        errors.push_back(where + ": line contains a newline");
      }
      if (!line.empty() && (line.front() == ' ' || line.front() == '\t')) {
        errors.push_back(where + ": line carries leading indentation");
      }
      if (line.empty()) {
        errors.push_back(where + ": empty tactic line");
      }
    }
  }
  if (!skeletons.front().lines.empty()) {
    errors.push_back("skeleton 1 must be the empty skeleton");
  }
  return errors;
}

std::vector<ScheduleEntry> schedule_for(int k, ScheduleMode mode) {
  return schedule_for(k, mode, builtin_skeletons());
}

std::vector<ScheduleEntry> schedule_for(int k, ScheduleMode mode,
                                        const std::vector<TacticSkeleton>& skeletons) {
  if (k < 1) throw std::invalid_argument("schedule_for: k must be >= 1");
  auto errors = validate_skeleton_set(skeletons);
  if (!errors.empty()) {
    throw std::invalid_argument("schedule_for: invalid skeleton set: " + errors.front());
  }

  const int m = static_cast<int>(skeletons.size());
  std::vector<ScheduleEntry> entries;
  entries.reserve(k);

  if (mode == ScheduleMode::kBaseline) {
    for (int i = 1; i <= k; ++i) {
      entries.push_back({i, skeletons[0], std::nullopt});
    }
    return entries;
  }

  // Cycle order for attempts past the hinted duplicate: 2..m then 1.
  std::vector<int> cycle;
  if (m == 1) {
    cycle.push_back(1);
  } else {
    for (int i = 2; i <= m; ++i) cycle.push_back(i);
    cycle.push_back(1);
  }

  for (int i = 1; i <= k; ++i) {
    if (i <= m) {
      entries.push_back({i, skeletons[i - 1], std::nullopt});
    } else if (i == m + 1) {
      entries.push_back({i, skeletons[0], canonical_hint()});
    } else {
      const int idx = cycle[(i - m - 2) % cycle.size()];
      entries.push_back({i, skeletons[idx - 1], std::nullopt});
    }
  }
  return entries;
}

std::string render_prompt(const TheoremRecord& theorem, const ScheduleEntry& entry) {
  std::string out;
  out.reserve(theorem.statement.size() + 160);
  out += "/- Lean 4 with Mathlib4 -/\n";
  out += "\n";
  out += "import Mathlib\n";
  out += "\n";
  out += "open BigOperators Real Nat Topology\n";
  out += "\n";
  out += theorem.statement;
  out += "\n";
  out += ":= by\n";
  if (entry.hint) {
    out += "  -- ";
    out += *entry.hint;
    out += "\n";
  }
  for (const auto& line : entry.skeleton.lines) {
    out += "  ";
    out += line;
    out += "\n";
  }
  return out;
}

std::vector<TacticSkeleton> load_skeleton_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open skeleton file '" + path + "'");
  std::vector<TacticSkeleton> skeletons;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("index") || !j.contains("lines") ||
        !j["lines"].is_array()) {
      throw std::runtime_error("skeleton file '" + path + "' line " + std::to_string(line_no) +
                               ": expected {index, lines}");
    }
    TacticSkeleton s;
    s.index = j["index"].get<int>();
    for (const auto& l : j["lines"]) {
      if (!l.is_string()) {
        throw std::runtime_error("skeleton file '" + path + "' line " +
                                 std::to_string(line_no) + ": lines must be strings");
      }
      s.lines.push_back(l.get<std::string>());
    }
    skeletons.push_back(std::move(s));
  }
  auto errors = validate_skeleton_set(skeletons);
  if (!errors.empty()) {
    throw std::runtime_error("skeleton file '" + path + "': " + errors.front());
  }
  return skeletons;
}

std::string hash_skeletons(const std::vector<TacticSkeleton>& skeletons) {
  std::string blob;
  for (const auto& s : skeletons) {
    blob += std::to_string(s.index);
    blob += '\x1f';
    for (const auto& line : s.lines) {
      blob += line;
      blob += '\x1e';
    }
    blob += '\n';
  }
  return fnv1a64_hex(blob);
}

}  // namespace prooflab
