#pragma once

#include <string>
#include <vector>

#include "prooflab/domain.hpp"

namespace prooflab {

// One slot of the prompt schedule.
struct ScheduleEntry {
  int attempt_index = 1;
  TacticSkeleton skeleton;
  std::optional<std::string> hint;

  bool operator==(const ScheduleEntry&) const = default;
};

enum class ScheduleMode { kStructured, kBaseline };

std::string to_string(ScheduleMode m);
std::optional<ScheduleMode> schedule_mode_from_string(const std::string& s);

// The 15 builtin proof prefixes, element i-1 holding skeleton index i.
// Skeleton 1 is empty; skeleton 7 uses the Unicode anonymous-constructor
// brackets U+27E8/U+27E9.
const std::vector<TacticSkeleton>& builtin_skeletons();

// The generic goal hint attached to the duplicate attempt.
const std::string& canonical_hint();

// Builds the k-entry schedule over the given skeleton set (builtins by
// default, size m). Baseline: every entry is the empty skeleton, no hint.
// Structured: attempts 1..min(k,m) walk the skeletons in order, attempt m+1
// reuses skeleton 1 with the canonical hint, and later attempts cycle
// skeletons 2..m then 1 with no hint. Throws std::invalid_argument for k < 1
// or an invalid skeleton set.
std::vector<ScheduleEntry> schedule_for(int k, ScheduleMode mode);
std::vector<ScheduleEntry> schedule_for(int k, ScheduleMode mode,
                                        const std::vector<TacticSkeleton>& skeletons);

// Renders the completion-style prompt: fixed Lean/Mathlib header, the verbatim
// statement, ":= by", then the hint comment and skeleton lines indented two
// spaces, ending with a trailing newline. The caller is responsible for
// passing a validated theorem.
std::string render_prompt(const TheoremRecord& theorem, const ScheduleEntry& entry);

// Validates a skeleton set: indices must be 1..m in order, skeleton 1 empty,
// no line may contain a newline or leading indentation.
std::vector<std::string> validate_skeleton_set(const std::vector<TacticSkeleton>& skeletons);

// Loads a user-supplied skeleton file (one JSON object per line: index,
// lines). Throws std::runtime_error on parse or validation failure.
std::vector<TacticSkeleton> load_skeleton_file(const std::string& path);

// Content hash of a skeleton set, recorded in the run manifest.
std::string hash_skeletons(const std::vector<TacticSkeleton>& skeletons);

}  // namespace prooflab
