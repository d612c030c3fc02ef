#include "spiral/harness.h"

#include <cmath>
#include <filesystem>
#include <set>
#include <sstream>

#include "spiral/errors.h"
#include "spiral/io.h"

namespace spiral {
namespace {

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorCode::kInvalidConfiguration, what);
}

template <typename T>
std::pair<T, T> read_pair(const nlohmann::json& value, const char* key) {
  if (!value.is_array() || value.size() != 2) {
    throw Error(ErrorCode::kConfigParse,
                std::string(key) + " must be a two-element array");
  }
  return {value[0].get<T>(), value[1].get<T>()};
}

}  // namespace

void ExperimentConfig::validate() const {
  if (n < 1 || cluster_count < 1) invalid("n and n_C must be positive");
  if (n % cluster_count != 0) invalid("n must be divisible by n_C");
  if (m < 1) invalid("m must be >= 1");
  if (dim < 1) invalid("d must be >= 1");
  if (iterations < 1) invalid("iterations must be >= 1");
  if (!(schedule.alpha0 > 0.0) || !std::isfinite(schedule.alpha0)) {
    invalid("alpha0 must be a positive finite number");
  }
  if (!(noise_std >= 0.0)) invalid("noise_std must be >= 0");
  if (!std::isfinite(true_theta)) invalid("true_theta must be finite");
  if (!(theta_lower < theta_upper)) invalid("theta_box needs lower < upper");
  if (bits_per_scalar < 1) invalid("bits_per_scalar must be >= 1");
  if (algorithm == Algorithm::kSpiral && cluster_count < 2) {
    invalid("the spiral algorithm needs n_C >= 2");
  }
}

MeteringParams ExperimentConfig::metering() const {
  return {bits_per_scalar, dim, m, fusion};
}

ExperimentConfig config_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) {
    throw Error(ErrorCode::kConfigParse, "config must be a JSON object");
  }
  static const std::set<std::string> kKeys = {
      "n",         "n_C",        "m",          "d",
      "algorithm", "schedule",   "alpha0",     "iterations",
      "seed",      "true_theta", "noise_std",  "theta_box",
      "bits_per_scalar", "fusion_position", "out_dir"};
  for (const auto& [key, value] : doc.items()) {
    if (!kKeys.contains(key)) {
      throw Error(ErrorCode::kConfigParse, "unknown config key '" + key + "'");
    }
  }

  ExperimentConfig cfg;
  try {
    cfg.n = doc.value("n", cfg.n);
    cfg.cluster_count = doc.value("n_C", cfg.cluster_count);
    cfg.m = doc.value("m", cfg.m);
    cfg.dim = doc.value("d", cfg.dim);
    if (doc.contains("algorithm")) {
      auto name = doc["algorithm"].get<std::string>();
      auto algo = parse_algorithm(name);
      if (!algo) {
        throw Error(ErrorCode::kConfigParse, "unknown algorithm '" + name + "'");
      }
      cfg.algorithm = *algo;
    }
    if (doc.contains("schedule")) {
      auto kind = doc["schedule"].get<std::string>();
      if (kind == "fixed") {
        cfg.schedule.kind = StepSizeSchedule::Kind::kFixed;
      } else if (kind == "diminishing") {
        cfg.schedule.kind = StepSizeSchedule::Kind::kDiminishing;
      } else {
        throw Error(ErrorCode::kConfigParse, "unknown schedule '" + kind + "'");
      }
    }
    cfg.schedule.alpha0 = doc.value("alpha0", cfg.schedule.alpha0);
    cfg.iterations = doc.value("iterations", cfg.iterations);
    cfg.seed = doc.value("seed", cfg.seed);
    cfg.true_theta = doc.value("true_theta", cfg.true_theta);
    cfg.noise_std = doc.value("noise_std", cfg.noise_std);
    if (doc.contains("theta_box")) {
      std::tie(cfg.theta_lower, cfg.theta_upper) =
          read_pair<double>(doc["theta_box"], "theta_box");
    }
    cfg.bits_per_scalar = doc.value("bits_per_scalar", cfg.bits_per_scalar);
    if (doc.contains("fusion_position")) {
      std::tie(cfg.fusion.x, cfg.fusion.y) =
          read_pair<double>(doc["fusion_position"], "fusion_position");
    }
    cfg.out_dir = doc.value("out_dir", cfg.out_dir);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kConfigParse, std::string("config: ") + e.what());
  }
  return cfg;
}

nlohmann::json config_to_json(const ExperimentConfig& cfg) {
  return {{"n", cfg.n},
          {"n_C", cfg.cluster_count},
          {"m", cfg.m},
          {"d", cfg.dim},
          {"algorithm", to_string(cfg.algorithm)},
          {"schedule", cfg.schedule.kind == StepSizeSchedule::Kind::kFixed
                           ? "fixed"
                           : "diminishing"},
          {"alpha0", cfg.schedule.alpha0},
          {"iterations", cfg.iterations},
          {"seed", cfg.seed},
          {"true_theta", cfg.true_theta},
          {"noise_std", cfg.noise_std},
          {"theta_box", {cfg.theta_lower, cfg.theta_upper}},
          {"bits_per_scalar", cfg.bits_per_scalar},
          {"fusion_position", {cfg.fusion.x, cfg.fusion.y}},
          {"out_dir", cfg.out_dir}};
}

ExperimentConfig load_config(const std::string& path) {
  const std::string text = io::read_text_file(path);
  nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
  if (doc.is_discarded()) {
    throw Error(ErrorCode::kConfigParse, path + " is not valid JSON");
  }
  return config_from_json(doc);
}

ProblemInstance build_problem(const ExperimentConfig& config) {
  config.validate();
  ProblemInstance problem;
  problem.network = build_network(config.n, config.cluster_count, config.seed);
  problem.data = generate_observations(problem.network, config.m,
                                       config.true_theta, config.noise_std,
                                       config.seed, config.dim);
  problem.feasible =
      FeasibleSet::box(config.dim, config.theta_lower, config.theta_upper);
  problem.validate();
  return problem;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  ExperimentResult result;
  result.problem = build_problem(config);
  RunOptions options;
  options.metering = config.metering();
  result.trajectory =
      run(result.problem, config.algorithm, config.schedule, config.iterations,
          result.problem.feasible.center(), options);
  result.analysis = analyze(result.problem, result.trajectory, config.schedule,
                            {.probe_seed = config.seed});

  const auto& traj = result.trajectory;
  const double f_star = result.analysis.optimum.f_star;
  nlohmann::json to_tol = nullptr;
  for (const auto& rec : traj.iterations) {
    if (rec.total_objective - f_star <=
        kSummaryTolerance * std::max(1.0, std::abs(f_star))) {
      to_tol = rec.k;
      break;
    }
  }
  nlohmann::json final_theta = nlohmann::json::array();
  for (const auto& t : traj.terminal().theta) final_theta.push_back(t.value);

  nlohmann::json& s = result.summary;
  s["config"] = config_to_json(config);
  s["algorithm"] = to_string(config.algorithm);
  s["iterations"] = traj.iteration_count();
  s["final_objective"] = traj.terminal().total_objective;
  s["final_theta"] = std::move(final_theta);
  s["f_star"] = f_star;
  s["theta_star"] = result.analysis.optimum.theta_star.value;
  s["theorem1_floor"] = result.analysis.floor;
  s["empirical_liminf"] = result.analysis.liminf;
  s["tolerance"] = kSummaryTolerance;
  s["iterations_to_tolerance"] = to_tol;
  s["cost"] = io::ledger_to_json(traj.ledger);
  s["checks_pass"] = result.analysis.pass();
  return result;
}

EmittedFiles write_outputs(const ExperimentConfig& config,
                           const ExperimentResult& result) {
  std::error_code ec;
  std::filesystem::create_directories(config.out_dir, ec);
  if (ec) {
    throw Error(ErrorCode::kIo, "cannot create " + config.out_dir + ": " +
                                    ec.message());
  }
  const std::string stem = (std::filesystem::path(config.out_dir) /
                            (std::string(to_string(config.algorithm)) +
                             "_seed" + std::to_string(config.seed)))
                               .string();
  EmittedFiles files{stem + "_trajectory.csv", stem + "_summary.json",
                     stem + "_analysis.json"};
  std::ostringstream csv;
  io::write_trajectory_csv(csv, result.trajectory);
  io::write_text_file(files.trajectory_csv, csv.str());
  io::write_text_file(files.summary_json, result.summary.dump(2) + "\n");
  io::write_text_file(files.analysis_json,
                      io::analysis_to_json(result.analysis).dump(2) + "\n");
  return files;
}

nlohmann::json scaling_study_to_json(const ScalingStudy& study) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : study.rows) {
    rows.push_back({{"n", row.n},
                    {"n_C", row.cluster_count},
                    {"algorithm", to_string(row.algorithm)},
                    {"cost", io::ledger_to_json(row.mean)}});
  }
  return {{"rows", std::move(rows)},
          {"spiral_inter_cluster_slope", study.spiral_inter_slope},
          {"incluster_to_fusion_slope", study.incluster_fusion_slope},
          {"intra_cluster_equal", study.intra_equal}};
}

std::vector<SweepPoint> sweep_points(const ExperimentConfig& config,
                                     const std::vector<int>& cluster_counts) {
  config.validate();
  const int per_cluster = config.n / config.cluster_count;
  std::vector<SweepPoint> points;
  for (int nc : cluster_counts) {
    if (nc < 1) invalid("sweep cluster counts must be positive");
    points.push_back({per_cluster * nc, nc});
  }
  return points;
}

AnalysisReport check_trajectory(const ExperimentConfig& config,
                                const std::string& trajectory_csv_path) {
  ProblemInstance problem = build_problem(config);
  std::istringstream in(io::read_text_file(trajectory_csv_path));
  TrajectoryRecord traj =
      io::read_trajectory_csv(in, config.algorithm, config.schedule);
  const int nc = problem.network.cluster_count();
  for (const auto& rec : traj.iterations) {
    if (static_cast<int>(rec.theta.size()) != nc) {
      throw Error(ErrorCode::kInvalidArgument,
                  "trajectory cluster count does not match the config");
    }
    for (const auto& t : rec.theta) {
      if (t.dim() != problem.dim()) {
        throw Error(ErrorCode::kInvalidArgument,
                    "trajectory dimension does not match the config");
      }
    }
    for (std::size_t j = 0; j < rec.phi.size(); ++j) {
      if (rec.phi[j].size() != 1 &&
          rec.phi[j].size() != problem.network.paths[j].size() + 1) {
        throw Error(ErrorCode::kInvalidArgument,
                    "trajectory sub-iterate count does not match the paths");
      }
    }
  }
  return analyze(problem, traj, config.schedule, {.probe_seed = config.seed});
}

}  // namespace spiral
