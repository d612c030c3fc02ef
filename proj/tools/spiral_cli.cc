// Command-line front end: run / sweep / check.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "spiral/errors.h"
#include "spiral/harness.h"
#include "spiral/io.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct RunArgs {
  std::string config;
  std::optional<std::string> algorithm;
  std::optional<std::uint64_t> seed;
  std::optional<int> iterations;
  std::optional<std::string> out_dir;
};

struct SweepArgs {
  std::string config;
  std::vector<int> cluster_counts{4, 16, 64};
  int seeds = 10;
  std::optional<std::string> out_dir;
};

struct CheckArgs {
  std::string config;
  std::string trajectory;
  std::optional<std::string> algorithm;
};

void apply_algorithm(spiral::ExperimentConfig& cfg,
                     const std::optional<std::string>& name) {
  if (!name) return;
  auto algo = spiral::parse_algorithm(*name);
  if (!algo) {
    throw spiral::Error(spiral::ErrorCode::kConfigParse,
                        "unknown algorithm '" + *name + "'");
  }
  cfg.algorithm = *algo;
}

int do_run(const RunArgs& args) {
  spiral::ExperimentConfig cfg = spiral::load_config(args.config);
  apply_algorithm(cfg, args.algorithm);
  if (args.seed) cfg.seed = *args.seed;
  if (args.iterations) cfg.iterations = *args.iterations;
  if (args.out_dir) cfg.out_dir = *args.out_dir;
  cfg.validate();

  spiral::ExperimentResult result = spiral::run_experiment(cfg);
  spiral::EmittedFiles files = spiral::write_outputs(cfg, result);

  const auto& s = result.summary;
  std::cout << "algorithm        " << s["algorithm"].get<std::string>() << "\n"
            << "iterations       " << s["iterations"] << "\n"
            << "final objective  " << s["final_objective"] << "\n"
            << "f(theta*)        " << s["f_star"] << "\n"
            << "total bit-meters " << s["cost"]["total_bm"] << "\n";
  for (const auto& check : result.analysis.checks) {
    std::cout << (check.pass() ? "[pass] " : "[FAIL] ") << check.name
              << "  worst margin " << check.worst_margin << "  violations "
              << check.violations << "\n";
  }
  std::cout << "wrote " << files.trajectory_csv << "\n"
            << "wrote " << files.summary_json << "\n"
            << "wrote " << files.analysis_json << "\n";
  return result.analysis.pass() ? kExitOk : kExitCheckFailed;
}

int do_sweep(const SweepArgs& args) {
  spiral::ExperimentConfig cfg = spiral::load_config(args.config);
  if (args.out_dir) cfg.out_dir = *args.out_dir;
  if (args.seeds < 1) {
    throw spiral::Error(spiral::ErrorCode::kInvalidConfiguration,
                        "--seeds must be >= 1");
  }
  auto points = spiral::sweep_points(cfg, args.cluster_counts);
  std::vector<std::uint64_t> seeds(args.seeds);
  std::iota(seeds.begin(), seeds.end(), cfg.seed);
  spiral::ScalingStudy study =
      spiral::scaling_study(points, seeds, cfg.iterations, cfg.metering());

  std::cout << "n,n_C,algorithm,intra_bm,inter_bm,to_fusion_bm,total_bm\n";
  for (const auto& row : study.rows) {
    std::cout << row.n << ',' << row.cluster_count << ','
              << spiral::to_string(row.algorithm) << ','
              << spiral::io::format_double(row.mean.intra_cluster_bm) << ','
              << spiral::io::format_double(row.mean.inter_cluster_bm) << ','
              << spiral::io::format_double(row.mean.to_fusion_bm) << ','
              << spiral::io::format_double(row.mean.total_bm()) << "\n";
  }
  std::cout << "spiral inter-cluster slope vs n_C:   " << study.spiral_inter_slope
            << "\nin-cluster to-fusion slope vs n_C:   "
            << study.incluster_fusion_slope << "\nintra-cluster equal: "
            << (study.intra_equal ? "yes" : "no") << "\n";

  std::filesystem::create_directories(cfg.out_dir);
  const std::string path =
      (std::filesystem::path(cfg.out_dir) / "sweep.json").string();
  spiral::io::write_text_file(path,
                              spiral::scaling_study_to_json(study).dump(2) + "\n");
  std::cout << "wrote " << path << "\n";
  return kExitOk;
}

int do_check(const CheckArgs& args) {
  spiral::ExperimentConfig cfg = spiral::load_config(args.config);
  apply_algorithm(cfg, args.algorithm);
  spiral::AnalysisReport report = spiral::check_trajectory(cfg, args.trajectory);
  std::cout << spiral::io::analysis_to_json(report).dump(2) << "\n";
  return report.pass() ? kExitOk : kExitCheckFailed;
}

int exit_code_for(const spiral::Error& e) {
  switch (e.code()) {
    case spiral::ErrorCode::kConfigParse:
    case spiral::ErrorCode::kInvalidConfiguration:
    case spiral::ErrorCode::kInvalidSize:
    case spiral::ErrorCode::kInvalidArgument:
    case spiral::ErrorCode::kUnboundedFeasibleSet:
      return kExitConfig;
    default:
      return kExitRuntime;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Clustered sensor-network optimization: spiral vs in-cluster "
               "vs centralized"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Run one experiment and write outputs");
  run->add_option("--config", run_args.config, "Config JSON")->required();
  run->add_option("--algorithm", run_args.algorithm,
                  "spiral | incluster | centralized");
  run->add_option("--seed", run_args.seed, "Seed override");
  run->add_option("--iters", run_args.iterations, "Iteration override");
  run->add_option("--out", run_args.out_dir, "Output directory override");

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "Transport-cost scaling sweep");
  sweep->add_option("--config", sweep_args.config, "Config JSON")->required();
  sweep->add_option("--nc", sweep_args.cluster_counts, "Cluster counts")
      ->delimiter(',');
  sweep->add_option("--seeds", sweep_args.seeds, "Number of seeds");
  sweep->add_option("--out", sweep_args.out_dir, "Output directory override");

  CheckArgs check_args;
  auto* check = app.add_subcommand("check", "Re-analyze a saved trajectory");
  check->add_option("--trajectory", check_args.trajectory, "Trajectory CSV")
      ->required();
  check->add_option("--config", check_args.config, "Config JSON")->required();
  check->add_option("--algorithm", check_args.algorithm,
                    "Algorithm that produced the trajectory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) return do_run(run_args);
    if (*sweep) return do_sweep(sweep_args);
    if (*check) return do_check(check_args);
  } catch (const spiral::Error& e) {
    std::cerr << "error (" << spiral::to_string(e.code()) << "): " << e.what()
              << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitConfig;
}
