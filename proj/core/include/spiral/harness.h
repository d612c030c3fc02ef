#ifndef SPIRAL_HARNESS_H_
#define SPIRAL_HARNESS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "spiral/analysis.h"
#include "spiral/cost_model.h"
#include "spiral/optimizer.h"
#include "spiral/problem.h"

namespace spiral {

// Every field maps to one key of the flat JSON config file:
//   n, n_C, m, d, algorithm, schedule ("fixed" | "diminishing"), alpha0,
//   iterations, seed, true_theta, noise_std, theta_box [lo, hi],
//   bits_per_scalar, fusion_position [x, y], out_dir
// Missing keys keep these defaults; unknown keys are rejected.
struct ExperimentConfig {
  int n = 64;
  int cluster_count = 8;
  int m = 10;
  int dim = 1;
  Algorithm algorithm = Algorithm::kSpiral;
  StepSizeSchedule schedule = StepSizeSchedule::fixed(0.007);
  int iterations = 500;
  std::uint64_t seed = 1;
  double true_theta = 10.0;
  double noise_std = 1.0;
  double theta_lower = -100.0;
  double theta_upper = 100.0;
  int bits_per_scalar = 32;
  NodePosition fusion{0.5, 0.5};
  std::string out_dir = "out";

  // Throws Error(kInvalidConfiguration).
  void validate() const;
  MeteringParams metering() const;
};

// Throws Error(kConfigParse) for malformed JSON, wrong types or unknown keys.
ExperimentConfig config_from_json(const nlohmann::json& doc);
nlohmann::json config_to_json(const ExperimentConfig& config);
ExperimentConfig load_config(const std::string& path);

ProblemInstance build_problem(const ExperimentConfig& config);

struct ExperimentResult {
  ProblemInstance problem;
  TrajectoryRecord trajectory;
  AnalysisReport analysis;
  nlohmann::json summary;
};

// Relative tolerance behind the summary's "iterations_to_tolerance".
inline constexpr double kSummaryTolerance = 1e-3;

// Builds the instance, runs the configured algorithm with metering and
// checks the result. Writes nothing.
ExperimentResult run_experiment(const ExperimentConfig& config);

struct EmittedFiles {
  std::string trajectory_csv;
  std::string summary_json;
  std::string analysis_json;
};

// <out_dir>/<algorithm>_seed<seed>_{trajectory.csv,summary.json,analysis.json}
EmittedFiles write_outputs(const ExperimentConfig& config,
                           const ExperimentResult& result);

nlohmann::json scaling_study_to_json(const ScalingStudy& study);

// Points for the sweep CLI: the config's cluster size n / n_C held fixed while
// n_C ranges over cluster_counts.
std::vector<SweepPoint> sweep_points(const ExperimentConfig& config,
                                     const std::vector<int>& cluster_counts);

// Re-analyzes a trajectory CSV against the instance the config describes.
AnalysisReport check_trajectory(const ExperimentConfig& config,
                                const std::string& trajectory_csv_path);

}  // namespace spiral

#endif  // SPIRAL_HARNESS_H_
