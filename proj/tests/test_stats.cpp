#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <random>
#include <vector>

#include "prooflab/stats.hpp"

using namespace prooflab;

namespace {

// Independent oracle: p over explicit enumeration of all 2^n discordant-pair
// outcomes (each pair won by A or B with probability 1/2).
double mcnemar_bruteforce(int a, int b) {
  const int n = a + b;
  if (n == 0) return 1.0;
  const int m = std::max(a, b);
  std::uint64_t hits = 0;
  const std::uint64_t total = 1ull << n;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    if (__builtin_popcountll(mask) >= m) ++hits;
  }
  const double p = 2.0 * static_cast<double>(hits) / static_cast<double>(total);
  return std::min(1.0, p);
}

// Independent exact binomials via Pascal's triangle in 128-bit integers.
__uint128_t binom128(int n, int k) {
  std::vector<__uint128_t> row(static_cast<std::size_t>(n) + 1, 0);
  row[0] = 1;
  for (int i = 1; i <= n; ++i) {
    for (int j = i; j >= 1; --j) row[j] += row[j - 1];
  }
  return row[k];
}

std::set<std::string> make_ids(int n) {
  std::set<std::string> ids;
  for (int i = 0; i < n; ++i) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "t%03d", i + 1);
    ids.insert(buf);
  }
  return ids;
}

AttemptRecord attempt(const std::string& id, int index, Verdict v) {
  AttemptRecord a;
  a.theorem_id = id;
  a.attempt_index = index;
  a.verdict = v;
  if (v == Verdict::kFail || v == Verdict::kTimeout) a.error_class = ErrorClass::kOther;
  return a;
}

}  // namespace

// ---------------------------------------------------------------------------
// summarize_run
// ---------------------------------------------------------------------------

TEST_CASE("summarize_run reproduces the headline pass rates") {
  auto ids = make_ids(244);
  std::vector<AttemptRecord> attempts;
  int i = 0;
  for (const auto& id : ids) {
    ++i;
    attempts.push_back(attempt(id, 1, i <= 53 ? Verdict::kPass : Verdict::kFail));
    attempts.push_back(attempt(id, 2, Verdict::kFail));
  }
  auto s = summarize_run("structured", attempts, ids);
  CHECK(s.total_theorems == 244);
  CHECK(s.solved_ids.size() == 53);
  CHECK(s.pass_rate == doctest::Approx(53.0 / 244.0).epsilon(1e-12));
  CHECK(s.pass_rate * 100.0 == doctest::Approx(21.72).epsilon(1e-3));

  std::vector<AttemptRecord> attempts_b(attempts.begin(), attempts.end());
  for (auto& a : attempts_b) {
    if (a.verdict == Verdict::kPass && std::stoi(a.theorem_id.substr(1)) > 37) {
      a.verdict = Verdict::kFail;
      a.error_class = ErrorClass::kOther;
    }
  }
  auto b = summarize_run("baseline", attempts_b, ids);
  CHECK(b.solved_ids.size() == 37);
  CHECK(b.pass_rate * 100.0 == doctest::Approx(15.16).epsilon(1e-3));
}

TEST_CASE("summarize_run with zero passes") {
  auto ids = make_ids(10);
  std::vector<AttemptRecord> attempts = {attempt("t001", 1, Verdict::kFail)};
  auto s = summarize_run("r", attempts, ids);
  CHECK(s.solved_ids.empty());
  CHECK(s.pass_rate == 0.0);
}

TEST_CASE("summarize_run rejects unknown theorems and empty benchmarks") {
  auto ids = make_ids(3);
  CHECK_THROWS_AS(summarize_run("r", {attempt("zz", 1, Verdict::kFail)}, ids),
                  std::invalid_argument);
  CHECK_THROWS_AS(summarize_run("r", {}, {}), std::invalid_argument);
}

TEST_CASE("summarize_run is permutation-invariant") {
  auto ids = make_ids(20);
  std::vector<AttemptRecord> attempts;
  std::mt19937 rng(3);
  for (const auto& id : ids) {
    for (int k = 1; k <= 4; ++k) {
      attempts.push_back(attempt(id, k, rng() % 5 == 0 ? Verdict::kPass : Verdict::kFail));
    }
  }
  auto base = summarize_run("r", attempts, ids);
  for (int t = 0; t < 10; ++t) {
    std::shuffle(attempts.begin(), attempts.end(), rng);
    auto s = summarize_run("r", attempts, ids);
    CHECK(s.solved_ids == base.solved_ids);
    CHECK(s.pass_rate == base.pass_rate);
  }
}

// ---------------------------------------------------------------------------
// paired_overlap
// ---------------------------------------------------------------------------

TEST_CASE("paired_overlap reproduces the reference outcome matrix") {
  RunSummary a, b;
  a.run_id = "structured";
  b.run_id = "baseline";
  a.total_theorems = b.total_theorems = 244;
  for (int i = 1; i <= 53; ++i) a.solved_ids.insert("t" + std::to_string(i));
  for (int i = 1; i <= 34; ++i) b.solved_ids.insert("t" + std::to_string(i));
  for (int i = 54; i <= 56; ++i) b.solved_ids.insert("t" + std::to_string(i));
  REQUIRE(a.solved_ids.size() == 53);
  REQUIRE(b.solved_ids.size() == 37);

  auto o = paired_overlap(a, b);
  CHECK(o.both == 34);
  CHECK(o.only_a == 19);
  CHECK(o.only_b == 3);
  CHECK(o.neither == 188);
  CHECK(o.both + o.only_a + o.only_b + o.neither == 244);
}

TEST_CASE("paired_overlap identical and disjoint cases") {
  RunSummary a, b;
  a.total_theorems = b.total_theorems = 10;
  a.solved_ids = {"t1", "t2"};
  b.solved_ids = a.solved_ids;
  auto same = paired_overlap(a, b);
  CHECK(same.only_a == 0);
  CHECK(same.only_b == 0);
  CHECK(same.both == 2);

  b.solved_ids = {"t3", "t4", "t5"};
  auto disjoint = paired_overlap(a, b);
  CHECK(disjoint.both == 0);
  CHECK(disjoint.only_a == 2);
  CHECK(disjoint.only_b == 3);
  CHECK(disjoint.neither == 5);

  b.total_theorems = 11;
  CHECK_THROWS_AS(paired_overlap(a, b), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// mcnemar_exact
// ---------------------------------------------------------------------------

TEST_CASE("mcnemar_exact matches the frozen oracle values") {
  // 2 * (C(22,19)+C(22,20)+C(22,21)+C(22,22)) / 2^22 = 3588/4194304
  CHECK(mcnemar_exact(19, 3) == doctest::Approx(0.0008554458618164062).epsilon(1e-12));
  CHECK(mcnemar_exact(19, 3) < 0.001);
  CHECK(mcnemar_exact(0, 0) == 1.0);
  CHECK(mcnemar_exact(5, 5) == 1.0);  // doubling convention capped at 1
  CHECK_THROWS_AS(mcnemar_exact(-1, 2), std::invalid_argument);
}

TEST_CASE("mcnemar_exact matches brute-force enumeration for all a+b <= 16") {
  for (int n = 0; n <= 16; ++n) {
    for (int a = 0; a <= n; ++a) {
      const int b = n - a;
      CAPTURE(a);
      CAPTURE(b);
      CHECK(std::fabs(mcnemar_exact(a, b) - mcnemar_bruteforce(a, b)) <= 1e-12);
    }
  }
}

TEST_CASE("mcnemar_exact is symmetric up to a+b = 64") {
  for (int n = 0; n <= 64; n += (n < 8 ? 1 : 7)) {
    for (int a = 0; a <= n; ++a) {
      CHECK(mcnemar_exact(a, n - a) == mcnemar_exact(n - a, a));
    }
  }
}

TEST_CASE("mcnemar_exact p is non-increasing as the split grows more lopsided") {
  for (int n : {1, 2, 3, 10, 22, 63, 64}) {
    double prev = 2.0;
    for (int a = (n + 1) / 2; a <= n; ++a) {
      const double p = mcnemar_exact(a, n - a);
      CHECK(p <= prev + 1e-15);
      prev = p;
    }
  }
}

TEST_CASE("mcnemar_exact agrees with exact 128-bit binomials up to n = 64") {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 64);
    const int a = static_cast<int>(rng() % (n + 1));
    const int b = n - a;
    const int m = std::max(a, b);
    __uint128_t tail = 0;
    for (int i = m; i <= n; ++i) tail += binom128(n, i);
    const long double expected =
        std::min<long double>(1.0L, 2.0L * static_cast<long double>(tail) /
                                        std::exp2l(static_cast<long double>(n)));
    CHECK(std::fabs(mcnemar_exact(a, b) - static_cast<double>(expected)) <= 1e-12);
  }
}

TEST_CASE("mcnemar_exact stays sane beyond the exact-integer range") {
  const double p = mcnemar_exact(60, 40);  // n = 100
  CHECK(p > 0.0);
  CHECK(p <= 1.0);
  CHECK(p == doctest::Approx(0.0569).epsilon(0.02));  // two-tailed binomial, n=100
  CHECK(mcnemar_exact(60, 40) == mcnemar_exact(40, 60));
}

TEST_CASE("mcnemar_chi_square continuity-corrected statistic") {
  CHECK(mcnemar_chi_square(0, 0) == 0.0);
  CHECK(mcnemar_chi_square(19, 3) == doctest::Approx((15.0 * 15.0) / 22.0));
  CHECK(mcnemar_chi_square(5, 5) == 0.0);  // |a-b|-1 clamps at 0
}

// ---------------------------------------------------------------------------
// relative_gain
// ---------------------------------------------------------------------------

TEST_CASE("relative_gain reproduces the headline number") {
  RunSummary base, treat;
  base.total_theorems = treat.total_theorems = 244;
  base.pass_rate = 37.0 / 244.0;
  treat.pass_rate = 53.0 / 244.0;
  CHECK(relative_gain(base, treat) == doctest::Approx(16.0 / 37.0).epsilon(1e-12));
  CHECK(relative_gain(base, treat) * 100.0 == doctest::Approx(43.24).epsilon(1e-3));

  treat.pass_rate = base.pass_rate;
  CHECK(relative_gain(base, treat) == doctest::Approx(0.0));

  base.pass_rate = 0.0;
  CHECK_THROWS_AS(relative_gain(base, treat), std::invalid_argument);
}

TEST_CASE("format_percent renders two decimals") {
  CHECK(format_percent(37.0 / 244.0, 2) == "15.16");
  CHECK(format_percent(53.0 / 244.0, 2) == "21.72");
  CHECK(format_percent(16.0 / 37.0, 2) == "43.24");
  CHECK(format_percent(0.329, 1) == "32.9");
}
