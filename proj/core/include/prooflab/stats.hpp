#pragma once

#include <set>
#include <string>
#include <vector>

#include "prooflab/diagnostics.hpp"
#include "prooflab/domain.hpp"

namespace prooflab {

struct RunSummary {
  std::string run_id;
  int total_theorems = 0;
  std::set<std::string> solved_ids;
  double pass_rate = 0.0;  // |solved_ids| / total_theorems, in [0,1]
};

struct OverlapCounts {
  int both = 0;
  int only_a = 0;
  int only_b = 0;
  int neither = 0;
};

struct PairedComparison {
  OverlapCounts overlap;
  double p_value = 1.0;
  double chi_square = 0.0;     // continuity-corrected, reported alongside the exact p
  bool gain_defined = false;   // false when the base run solved nothing
  double relative_gain = 0.0;  // (treat - base) / base, as a fraction
};

// A theorem counts as solved when any of its attempts passed. Throws
// std::invalid_argument when an attempt references a theorem outside the
// benchmark or the benchmark is empty. Invariant under permutation of the
// attempt log.
RunSummary summarize_run(const std::string& run_id,
                         const std::vector<AttemptRecord>& attempts,
                         const std::set<std::string>& benchmark_ids);

// Set algebra over solved ids. Requires a.total_theorems == b.total_theorems.
OverlapCounts paired_overlap(const RunSummary& a, const RunSummary& b);

// Exact two-tailed McNemar test over the discordant pairs: with
// n = only_a + only_b and m = max(only_a, only_b),
//   p = min(1, 2 * sum_{i=m}^{n} C(n,i) * 2^-n),  p = 1 when n = 0.
// Binomial coefficients are exact integers for n <= 64; larger n falls back
// to a long-double accumulation.
double mcnemar_exact(int only_a, int only_b);

// Classic McNemar chi-square statistic with continuity correction,
// (|a-b|-1)^2 / (a+b); 0 when there are no discordant pairs.
double mcnemar_chi_square(int only_a, int only_b);

// (treat.pass_rate - base.pass_rate) / base.pass_rate. Throws
// std::invalid_argument when base.pass_rate == 0.
double relative_gain(const RunSummary& base, const RunSummary& treat);

// ---------------------------------------------------------------------------
// Report rendering
// ---------------------------------------------------------------------------

// Percent formatting helpers used by the report files: pass rates and gains
// carry two decimals, error distributions one.
std::string format_percent(double fraction_0_1, int decimals);

// Plain-text pass-rate table for one or two runs (two-run form mirrors the
// paired layout: baseline row first, then treatment with its relative gain).
std::string format_summary_table(const RunSummary& run);
std::string format_comparison_table(const RunSummary& treat, const RunSummary& base,
                                    const PairedComparison& cmp);

// Plain-text error-class table; two-column form prints side-by-side
// distributions, one decimal each.
std::string format_error_table(const ErrorDistribution& dist);
std::string format_error_table(const std::string& label_a, const ErrorDistribution& a,
                               const std::string& label_b, const ErrorDistribution& b);

}  // namespace prooflab
