// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracles.h"
#include "spiral/analysis.h"
#include "spiral/cost_model.h"
#include "spiral/harness.h"
#include "spiral/io.h"
#include "spiral/optimizer.h"
#include "test_util.h"

namespace {

using namespace spiral;
using Clock = std::chrono::steady_clock;

constexpr int kSeeds = 20;
constexpr double kAlpha = 0.007;
constexpr int kDiminishingIters = 500;
constexpr int kFixedIters = 2000;
constexpr double kAccuracyRelTol = 0.10;
constexpr double kConvergenceFactor = 10.0;
constexpr int kRandomProbes = 10;
constexpr double kSlopeTol = 0.15;
constexpr double kReplayTol = 1e-12;
constexpr double kGradRelTol = 1e-6;

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::printf("[%s] criterion %2d: %s\n", ok ? "PASS" : "FAIL", id,
              detail.c_str());
  if (!ok) ++failures;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* pattern, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), pattern, a, b, c);
  return buf;
}

// Runs every spiral/in-cluster trajectory of criteria 1-3 through the Lemma 1
// and drift checks as they are produced.
struct BoundAudit {
  long lemma_rows = 0;
  int lemma_violations = 0;
  double lemma_worst = INFINITY;
  long drift_rows = 0;
  int drift_violations = 0;
  double drift_worst = INFINITY;

  void audit(const ProblemInstance& p, const TrajectoryRecord& traj,
             std::uint64_t seed) {
    BoundSet b = compute_bounds(p);
    auto lemma = check_lemma1(p, traj, b, reference_optimum(p).theta_star);
    std::mt19937_64 rng(seed * 7919 + static_cast<int>(traj.algorithm));
    std::uniform_real_distribution<double> y(p.feasible.lower[0],
                                             p.feasible.upper[0]);
    for (int r = 0; r < kRandomProbes; ++r) {
      lemma.merge(check_lemma1(p, traj, b, Estimate::scalar(y(rng))));
    }
    lemma_rows += static_cast<long>(lemma.rows.size());
    lemma_violations += lemma.violations;
    lemma_worst = std::min(lemma_worst, lemma.worst_margin);

    auto drift = check_drift(traj, b);
    drift_rows += static_cast<long>(drift.rows.size());
    drift_violations += drift.violations;
    drift_worst = std::min(drift_worst, drift.worst_margin);
  }
};

double mean_error(const IterationRecord& rec, const Estimate& star) {
  double sum = 0.0;
  for (const auto& t : rec.theta) sum += std::sqrt(squared_distance(t, star));
  return sum / static_cast<double>(rec.theta.size());
}

}  // namespace

int main() {
  BoundAudit audit;

  // 1 + 2: diminishing step, spiral vs in-cluster.
  {
    auto t0 = Clock::now();
    const auto sched = StepSizeSchedule::diminishing(kAlpha);
    double worst_rel = 0.0, worst_factor = INFINITY;
    for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
      auto p = testing::default_problem(seed);
      const Estimate start = p.feasible.center();
      auto spiral = run(p, Algorithm::kSpiral, sched, kDiminishingIters, start);
      auto incl = run(p, Algorithm::kInCluster, sched, kDiminishingIters, start);
      const double fs = spiral.iterations[kDiminishingIters - 1].total_objective;
      const double fi = incl.iterations[kDiminishingIters - 1].total_objective;
      worst_rel = std::max(worst_rel, std::abs(fs - fi) / std::abs(fi));

      const Estimate star = reference_optimum(p).theta_star;
      const double e1 = mean_error(spiral.iterations[0], star);
      const double eK = mean_error(spiral.iterations[kDiminishingIters - 1], star);
      worst_factor = std::min(worst_factor, e1 / eK);

      audit.audit(p, spiral, seed);
      audit.audit(p, incl, seed);
    }
    const double secs = seconds_since(t0);
    report(1, worst_rel <= kAccuracyRelTol && secs < 10.0,
           fmt("spiral vs in-cluster final objective, worst rel diff %.3g "
               "(limit 0.1), %.2f s (limit 10 s)",
               worst_rel, secs));
    report(2, worst_factor >= kConvergenceFactor,
           fmt("mean |theta_j - theta*| shrinks by at least %.3gx from k=1 to "
               "k=500 on every seed (limit 10x)",
               worst_factor));
  }

  // 3: fixed step error floor.
  {
    auto t0 = Clock::now();
    const auto sched = StepSizeSchedule::fixed(kAlpha);
    double worst_margin = INFINITY;
    bool ok = true;
    for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
      auto p = testing::default_problem(seed);
      auto spiral = run(p, Algorithm::kSpiral, sched, kFixedIters,
                        p.feasible.center());
      const double floor = theorem1_floor(kAlpha, compute_bounds(p),
                                          reference_optimum(p).f_star);
      const double liminf = empirical_liminf(spiral, 0.5);
      worst_margin = std::min(worst_margin, floor - liminf);
      ok = ok && liminf <= floor;
      audit.audit(p, spiral, seed);
    }
    const double secs = seconds_since(t0);
    report(3, ok && secs < 20.0,
           fmt("tail-50%% min objective <= f* + alpha/2 sum C_j^2 on every "
               "seed, worst margin %.6g, %.2f s (limit 20 s)",
               worst_margin, secs));
  }

  // 4 + 5: bound audits over every trajectory above.
  report(4, audit.lemma_violations == 0,
         fmt("Lemma 1 inequality: %.0f violations over %.0f (k, y) rows, "
             "worst margin %.6g",
             audit.lemma_violations, static_cast<double>(audit.lemma_rows),
             audit.lemma_worst));
  report(5, audit.drift_violations == 0,
         fmt("sub-iterate drift bound: %.0f violations over %.0f sub-iterates, "
             "worst margin %.6g",
             audit.drift_violations, static_cast<double>(audit.drift_rows),
             audit.drift_worst));

  // 6: transport-cost ordering on the default instance.
  {
    ExperimentConfig cfg;
    RunOptions opts;
    opts.metering = cfg.metering();
    auto p = build_problem(cfg);
    auto s = run(p, Algorithm::kSpiral, cfg.schedule, cfg.iterations,
                 p.feasible.center(), opts);
    auto i = run(p, Algorithm::kInCluster, cfg.schedule, cfg.iterations,
                 p.feasible.center(), opts);
    const bool ok = s.ledger.total_bm() < i.ledger.total_bm() &&
                    s.ledger.intra_cluster_bm == i.ledger.intra_cluster_bm;
    report(6, ok,
           fmt("spiral %.6g bm < in-cluster %.6g bm; intra-cluster equal: %.0f",
               s.ledger.total_bm(), i.ledger.total_bm(),
               s.ledger.intra_cluster_bm == i.ledger.intra_cluster_bm ? 1 : 0));
  }

  // 7: transport-cost scaling.
  {
    auto t0 = Clock::now();
    std::vector<SweepPoint> points{{4 * 8, 4}, {16 * 8, 16}, {64 * 8, 64}};
    std::vector<std::uint64_t> seeds;
    for (std::uint64_t s = 1; s <= 10; ++s) seeds.push_back(s);
    auto study = scaling_study(points, seeds, 1, MeteringParams{});
    const double secs = seconds_since(t0);
    const bool ok = std::abs(study.spiral_inter_slope - 0.5) <= kSlopeTol &&
                    std::abs(study.incluster_fusion_slope - 1.0) <= kSlopeTol &&
                    study.intra_equal && secs < 60.0;
    report(7, ok,
           fmt("log-log slope vs n_C: spiral inter-cluster %.4f (0.5 +- 0.15), "
               "in-cluster to-fusion %.4f (1.0 +- 0.15), %.2f s",
               study.spiral_inter_slope, study.incluster_fusion_slope, secs));
  }

  // 8: independent replay.
  {
    auto p = testing::default_problem(21, 4, 2, 10);
    oracle::ReplayInput in;
    in.paths = p.network.paths;
    for (const auto& d : p.data) in.observations.push_back(d.values);
    in.lower = p.feasible.lower[0];
    in.upper = p.feasible.upper[0];
    in.theta0 = p.feasible.center()[0];
    in.alpha = [](int k) { return kAlpha / k; };
    in.iterations = 50;
    auto ref = oracle::replay_spiral(in);
    auto traj = run(p, Algorithm::kSpiral, StepSizeSchedule::diminishing(kAlpha),
                    50, p.feasible.center());
    double worst = 0.0;
    for (int t = 0; t <= 50; ++t) {
      for (int j = 0; j < 2; ++j) {
        worst = std::max(worst, std::abs(traj.iterations[t].theta[j][0] -
                                         ref.theta[t][j]));
        if (t == 50) continue;
        for (std::size_t i = 0; i < ref.phi[t][j].size(); ++i) {
          worst = std::max(worst, std::abs(traj.iterations[t].phi[j][i][0] -
                                           ref.phi[t][j][i]));
        }
      }
    }
    report(8, worst <= kReplayTol,
           fmt("straight-line replay, 2 clusters x 2 nodes, 50 iterations: "
               "max deviation %.3g (limit 1e-12)",
               worst));
  }

  // 9: gradient vs central finite differences.
  {
    std::mt19937_64 rng(2024);
    std::normal_distribution<double> obs(10.0, 1.0);
    std::uniform_real_distribution<double> at(-100.0, 100.0);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
      NodeData node{1, {}};
      for (int r = 0; r < 10; ++r) node.values.push_back(obs(rng));
      const double theta = at(rng);
      const double fd = oracle::derivative(
          [&](double x) { return local_cost(node, Estimate::scalar(x)); },
          theta, 1e-4);
      const double g = subgradient(node, Estimate::scalar(theta))[0];
      worst = std::max(worst, std::abs(g - fd) / std::abs(g));
    }
    report(9, worst < kGradRelTol,
           fmt("subgradient vs finite differences at 100 points: worst "
               "relative error %.3g (limit 1e-6)",
               worst));
  }

  // 10: byte-identical outputs.
  {
    namespace fs = std::filesystem;
    ExperimentConfig cfg;
    fs::path base = fs::temp_directory_path() / "spiral_acceptance";
    fs::remove_all(base);
    cfg.out_dir = (base / "a").string();
    auto a = write_outputs(cfg, run_experiment(cfg));
    cfg.out_dir = (base / "b").string();
    auto b = write_outputs(cfg, run_experiment(cfg));
    const std::string ta = io::read_text_file(a.trajectory_csv);
    const std::string tb = io::read_text_file(b.trajectory_csv);
    report(10, !ta.empty() && ta == tb,
           fmt("two runs of the default config produce byte-identical "
               "trajectory CSVs (%.0f bytes)",
               static_cast<double>(ta.size())));
  }

  std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
