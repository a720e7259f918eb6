// prooflab: schedule-guided theorem-prover evaluation harness.
//
// Subcommands:
//   run      execute a benchmark run from a config file (resumable)
//   compare  paired comparison of two runs (overlap, gain, McNemar)
//   report   per-run pass@k and error-class distribution
//   validate check a benchmark file against the input invariants
//
// Exit codes: 0 success, 1 usage/config error, 2 aborted run.

#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "prooflab/orchestrator.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitAborted = 2;

int cmd_run(const std::string& config_path, const std::string& mode_override,
            int k_override, bool early_stop, const std::string& run_id_override,
            bool quiet) {
  prooflab::RunConfig config;
  try {
    config = prooflab::load_run_config(config_path);
    if (!mode_override.empty()) {
      auto m = prooflab::schedule_mode_from_string(mode_override);
      if (!m) throw std::runtime_error("unknown mode '" + mode_override + "'");
      config.mode = *m;
    }
    if (k_override > 0) config.k = k_override;
    if (early_stop) config.early_stop = true;
    if (!run_id_override.empty()) config.run_id = run_id_override;
    if (quiet) config.quiet = true;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    const prooflab::RunResult result = prooflab::run(config);
    std::cout << result.run_id << "\n";
    if (result.aborted) {
      std::cerr << "aborted: " << result.abort_reason << "\n"
                << "partial log retained; rerun with the same run_id to resume\n";
      return kExitAborted;
    }
    if (!config.quiet) {
      std::cerr << "logged " << result.attempts_logged << " attempt(s), skipped "
                << result.attempts_skipped << "\n";
    }
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

int cmd_compare(const std::string& workspace, const std::string& run_a,
                const std::string& run_b, const std::string& out_dir) {
  try {
    const auto rep = prooflab::compare_runs(workspace, run_a, run_b, out_dir);
    std::cout << rep.text;
    if (!out_dir.empty()) {
      std::cerr << "wrote " << out_dir << "/comparison.txt and comparison.json\n";
    }
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

int cmd_report(const std::string& workspace, const std::string& run_id,
               const std::string& out_dir) {
  try {
    const auto rep = prooflab::report_run(workspace, run_id, out_dir);
    std::cout << rep.text;
    if (!out_dir.empty()) {
      std::cerr << "wrote " << out_dir << "/report.txt and report.json\n";
    }
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

int cmd_validate(const std::string& benchmark_path) {
  try {
    const auto records = prooflab::load_benchmark(benchmark_path);
    const auto errors = prooflab::validate_benchmark(records);
    const auto warnings = prooflab::benchmark_warnings(records);
    for (const auto& w : warnings) std::cout << "warning [" << w.rule << "]: " << w.detail << "\n";
    for (const auto& e : errors) std::cout << "error [" << e.rule << "]: " << e.detail << "\n";
    std::cout << records.size() << " record(s), " << errors.size() << " error(s), "
              << warnings.size() << " warning(s)\n";
    return errors.empty() ? kExitOk : kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"schedule-guided theorem-prover evaluation harness"};
  app.require_subcommand(1);

  // run
  std::string config_path, mode_override, run_id_override;
  int k_override = 0;
  bool early_stop = false;
  bool quiet = false;
  auto* run_cmd = app.add_subcommand("run", "execute a benchmark run");
  run_cmd->add_option("--config", config_path, "run config JSON file")->required();
  run_cmd->add_option("--mode", mode_override, "structured|baseline (overrides config)");
  run_cmd->add_option("--k", k_override, "attempt budget per theorem (overrides config)");
  run_cmd->add_flag("--early-stop", early_stop, "stop a theorem at its first pass");
  run_cmd->add_option("--run-id", run_id_override, "explicit run id (enables resume)");
  run_cmd->add_flag("--quiet", quiet, "suppress progress output");

  // compare
  std::string cmp_a, cmp_b, cmp_out, cmp_ws = "workspace";
  auto* cmp_cmd = app.add_subcommand("compare", "paired comparison of two runs");
  cmp_cmd->add_option("run_a", cmp_a, "treatment run id")->required();
  cmp_cmd->add_option("run_b", cmp_b, "baseline run id")->required();
  cmp_cmd->add_option("--out", cmp_out, "output directory for report files");
  cmp_cmd->add_option("--workspace", cmp_ws, "workspace root (default: workspace)");

  // report
  std::string rep_id, rep_out, rep_ws = "workspace";
  auto* rep_cmd = app.add_subcommand("report", "per-run report");
  rep_cmd->add_option("run_id", rep_id, "run id")->required();
  rep_cmd->add_option("--out", rep_out, "output directory for report files");
  rep_cmd->add_option("--workspace", rep_ws, "workspace root (default: workspace)");

  // validate
  std::string val_path;
  auto* val_cmd = app.add_subcommand("validate", "validate a benchmark file");
  val_cmd->add_option("benchmark", val_path, "benchmark JSONL file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (run_cmd->parsed()) {
    return cmd_run(config_path, mode_override, k_override, early_stop, run_id_override, quiet);
  }
  if (cmp_cmd->parsed()) return cmd_compare(cmp_ws, cmp_a, cmp_b, cmp_out);
  if (rep_cmd->parsed()) return cmd_report(rep_ws, rep_id, rep_out);
  if (val_cmd->parsed()) return cmd_validate(val_path);
  return kExitUsage;
}
