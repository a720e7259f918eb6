#include "prooflab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

namespace prooflab {

RunSummary summarize_run(const std::string& run_id,
                         const std::vector<AttemptRecord>& attempts,
                         const std::set<std::string>& benchmark_ids) {
  if (benchmark_ids.empty()) {
    throw std::invalid_argument("summarize_run: empty benchmark");
  }
  RunSummary s;
  s.run_id = run_id;
  s.total_theorems = static_cast<int>(benchmark_ids.size());
  for (const auto& a : attempts) {
    if (!benchmark_ids.count(a.theorem_id)) {
      throw std::invalid_argument("summarize_run: attempt references unknown theorem '" +
                                  a.theorem_id + "'");
    }
    if (a.verdict == Verdict::kPass) s.solved_ids.insert(a.theorem_id);
  }
  s.pass_rate = static_cast<double>(s.solved_ids.size()) / s.total_theorems;
  return s;
}

OverlapCounts paired_overlap(const RunSummary& a, const RunSummary& b) {
  if (a.total_theorems != b.total_theorems) {
    throw std::invalid_argument("paired_overlap: runs cover different benchmark sizes");
  }
  OverlapCounts o;
  for (const auto& id : a.solved_ids) {
    if (b.solved_ids.count(id)) {
      o.both++;
    } else {
      o.only_a++;
    }
  }
  for (const auto& id : b.solved_ids) {
    if (!a.solved_ids.count(id)) o.only_b++;
  }
  o.neither = a.total_theorems - o.both - o.only_a - o.only_b;
  return o;
}

namespace {

// Pascal's triangle row; every C(n,k) for n <= 64 fits in uint64.
std::vector<std::uint64_t> binomial_row(int n) {
  std::vector<std::uint64_t> row(static_cast<std::size_t>(n) + 1, 1);
  for (int i = 1; i <= n; ++i) {
    for (int j = i - 1; j >= 1; --j) row[j] += row[j - 1];
  }
  return row;
}

}  // namespace

double mcnemar_exact(int only_a, int only_b) {
  if (only_a < 0 || only_b < 0) {
    throw std::invalid_argument("mcnemar_exact: negative discordant counts");
  }
  const int n = only_a + only_b;
  if (n == 0) return 1.0;
  const int m = std::max(only_a, only_b);

  long double tail;  // P(X >= m) with X ~ Bin(n, 1/2), times 2^n
  if (n <= 64) {
    const auto row = binomial_row(n);
    std::uint64_t sum = 0;
    for (int i = m; i <= n; ++i) sum += row[i];
    tail = static_cast<long double>(sum);
  } else {
    // Incremental ratio walk keeps relative error tiny for reporting needs.
    long double c = 1.0L;  // C(n, m) built up below
    for (int i = 1; i <= m; ++i) c = c * (n - m + i) / i;
    tail = 0.0L;
    long double term = c;
    for (int i = m; i <= n; ++i) {
      tail += term;
      term = term * (n - i) / (i + 1);
    }
  }
  const long double p = 2.0L * tail * std::exp2l(static_cast<long double>(-n));
  return static_cast<double>(std::min<long double>(1.0L, p));
}

double mcnemar_chi_square(int only_a, int only_b) {
  const int n = only_a + only_b;
  if (n == 0) return 0.0;
  const double d = std::max(0.0, std::fabs(static_cast<double>(only_a) - only_b) - 1.0);
  return d * d / n;
}

double relative_gain(const RunSummary& base, const RunSummary& treat) {
  if (base.pass_rate <= 0.0) {
    throw std::invalid_argument("relative_gain: base pass rate is zero");
  }
  return (treat.pass_rate - base.pass_rate) / base.pass_rate;
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

std::string format_percent(double fraction_0_1, int decimals) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, fraction_0_1 * 100.0);
  return buf;
}

namespace {

void append_row(std::string& out, const std::string& c0, const std::string& c1,
                const std::string& c2, const std::string& c3) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%-24s %-12s %-12s %s\n", c0.c_str(), c1.c_str(), c2.c_str(),
                c3.c_str());
  out += buf;
}

std::string solved_cell(const RunSummary& s) {
  return std::to_string(s.solved_ids.size()) + " / " + std::to_string(s.total_theorems);
}

}  // namespace

std::string format_summary_table(const RunSummary& run) {
  std::string out;
  append_row(out, "Run", "Solved (N)", "Pass@k (%)", "");
  append_row(out, run.run_id, solved_cell(run), format_percent(run.pass_rate, 2), "");
  return out;
}

std::string format_comparison_table(const RunSummary& treat, const RunSummary& base,
                                    const PairedComparison& cmp) {
  std::string out;
  append_row(out, "Run", "Solved (N)", "Pass@k (%)", "Relative Gain");
  append_row(out, base.run_id, solved_cell(base), format_percent(base.pass_rate, 2), "-");
  append_row(out, treat.run_id, solved_cell(treat), format_percent(treat.pass_rate, 2),
             cmp.gain_defined ? (std::string(cmp.relative_gain >= 0 ? "+" : "") +
                                 format_percent(cmp.relative_gain, 2) + "%")
                              : "n/a");
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "\nOverlap: both=%d only_a=%d only_b=%d neither=%d\n"
                "McNemar exact p = %.6g (chi-square %.4f over %d discordant pairs)\n",
                cmp.overlap.both, cmp.overlap.only_a, cmp.overlap.only_b, cmp.overlap.neither,
                cmp.p_value, cmp.chi_square, cmp.overlap.only_a + cmp.overlap.only_b);
  out += buf;
  return out;
}

std::string format_error_table(const ErrorDistribution& dist) {
  std::string out;
  if (dist.no_failures) return "no failures\n";
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%-20s %8s %8s\n", "Error Type", "Count", "%");
  out += buf;
  for (ErrorClass c : all_error_classes()) {
    std::snprintf(buf, sizeof(buf), "%-20s %8d %8.1f\n", to_string(c).c_str(),
                  dist.counts.at(c), dist.percent_1dp.at(c));
    out += buf;
  }
  std::snprintf(buf, sizeof(buf), "%-20s %8d\n", "total failures", dist.total_failures);
  out += buf;
  return out;
}

std::string format_error_table(const std::string& label_a, const ErrorDistribution& a,
                               const std::string& label_b, const ErrorDistribution& b) {
  std::string out;
  char buf[192];
  std::snprintf(buf, sizeof(buf), "%-20s %14s %14s\n", "Error Type", label_a.c_str(),
                label_b.c_str());
  out += buf;
  for (ErrorClass c : all_error_classes()) {
    std::snprintf(buf, sizeof(buf), "%-20s %14.1f %14.1f\n", to_string(c).c_str(),
                  a.no_failures ? 0.0 : a.percent_1dp.at(c),
                  b.no_failures ? 0.0 : b.percent_1dp.at(c));
    out += buf;
  }
  std::snprintf(buf, sizeof(buf), "%-20s %14d %14d\n", "failures", a.total_failures,
                b.total_failures);
  out += buf;
  return out;
}

}  // namespace prooflab
