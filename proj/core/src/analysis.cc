#include "spiral/analysis.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "spiral/errors.h"
#include "spiral/random.h"

namespace spiral {
namespace {

void require_feasible(const ProblemInstance& problem, const Estimate& y) {
  if (!problem.feasible.contains(y)) {
    throw Error(ErrorCode::kInvalidArgument,
                "probe point y must lie in the feasible set");
  }
}

bool has_passes(const IterationRecord& rec) {
  return !rec.phi.empty() && rec.phi.front().size() > 1;
}

}  // namespace

void InequalityReport::add(const InequalityRow& row) {
  worst_margin = rows.empty() ? row.margin()
                              : std::min(worst_margin, row.margin());
  if (!row.holds()) ++violations;
  rows.push_back(row);
}

void InequalityReport::merge(const InequalityReport& other) {
  for (const auto& row : other.rows) add(row);
}

BoundSet compute_bounds(const ProblemInstance& problem) {
  const FeasibleSet& box = problem.feasible;
  if (!box.bounded()) {
    throw Error(ErrorCode::kUnboundedFeasibleSet,
                "subgradient bounds need a bounded feasible box");
  }
  BoundSet b;
  for (const auto& path : problem.network.paths) {
    std::vector<double> row;
    row.reserve(path.size());
    double sum = 0.0;
    for (int v : path) {
      const NodeData& node = problem.data[v];
      const Estimate mean = node.mean();
      double sq = 0.0;
      for (int c = 0; c < box.dim(); ++c) {
        const double far = std::max(std::abs(box.lower[c] - mean[c]),
                                    std::abs(box.upper[c] - mean[c]));
        sq += far * far;
      }
      const double c_ij = 2.0 * node.count() * std::sqrt(sq);
      row.push_back(c_ij);
      sum += c_ij;
    }
    b.c_ij.push_back(std::move(row));
    b.c_j.push_back(sum);
    b.c_total += sum;
    b.c_hat += sum * sum;
  }
  return b;
}

InequalityReport check_lemma1(const ProblemInstance& problem,
                              const TrajectoryRecord& trajectory,
                              const BoundSet& bounds, const Estimate& y) {
  require_feasible(problem, y);
  InequalityReport report("lemma1");
  const int nc = problem.network.cluster_count();
  std::vector<double> f_y(nc);
  for (int j = 0; j < nc; ++j) f_y[j] = cluster_cost(problem, j, y);

  const auto& its = trajectory.iterations;
  for (std::size_t t = 0; t + 1 < its.size(); ++t) {
    const IterationRecord& now = its[t];
    const IterationRecord& next = its[t + 1];
    const double a = now.alpha;
    double lhs = 0.0, dist_now = 0.0, gap = 0.0;
    for (int j = 0; j < nc; ++j) {
      lhs += squared_distance(next.theta[j], y);
      dist_now += squared_distance(now.theta[j], y);
      gap += cluster_cost(problem, j, now.theta[j]) - f_y[j];
    }
    const double rhs = dist_now - 2.0 * a * gap + a * a * bounds.c_hat;
    report.add({.k = now.k, .lhs = lhs, .rhs = rhs});
  }
  return report;
}

InequalityReport check_drift(const TrajectoryRecord& trajectory,
                             const BoundSet& bounds) {
  InequalityReport report("drift_bound");
  for (const IterationRecord& rec : trajectory.iterations) {
    if (!has_passes(rec)) continue;
    for (std::size_t j = 0; j < rec.phi.size(); ++j) {
      const auto& phi = rec.phi[j];
      double budget = 0.0;
      for (std::size_t i = 1; i < phi.size(); ++i) {
        budget += bounds.c_ij[j][i - 1];
        report.add({.k = rec.k,
                    .j = static_cast<int>(j),
                    .i = static_cast<int>(i),
                    .lhs = std::sqrt(squared_distance(phi[i], phi[0])),
                    .rhs = rec.alpha * budget});
      }
    }
  }
  return report;
}

InequalityReport check_cluster_descent(const ProblemInstance& problem,
                                       const TrajectoryRecord& trajectory,
                                       const BoundSet& bounds,
                                       const Estimate& y) {
  require_feasible(problem, y);
  InequalityReport report("cluster_descent");
  const int nc = problem.network.cluster_count();
  std::vector<double> f_y(nc);
  for (int j = 0; j < nc; ++j) f_y[j] = cluster_cost(problem, j, y);

  for (const IterationRecord& rec : trajectory.iterations) {
    if (!has_passes(rec)) continue;
    const double a = rec.alpha;
    for (int j = 0; j < nc; ++j) {
      const Estimate& start = rec.phi[j].front();
      const Estimate& end = rec.phi[j].back();
      const double rhs = squared_distance(start, y) -
                         2.0 * a * (cluster_cost(problem, j, start) - f_y[j]) +
                         a * a * bounds.c_j[j] * bounds.c_j[j];
      report.add({.k = rec.k, .j = j, .lhs = squared_distance(end, y), .rhs = rhs});
    }
  }
  return report;
}

InequalityReport check_combine_average(const TrajectoryRecord& trajectory,
                                       const Estimate& y) {
  InequalityReport report("combine_average");
  const auto& its = trajectory.iterations;
  for (std::size_t t = 0; t + 1 < its.size(); ++t) {
    const IterationRecord& now = its[t];
    if (!has_passes(now)) continue;
    const IterationRecord& next = its[t + 1];
    const int nc = static_cast<int>(now.phi.size());
    std::vector<double> final_dist(nc);
    double mean_dist = 0.0;
    for (int j = 0; j < nc; ++j) {
      final_dist[j] = squared_distance(now.phi[j].back(), y);
      mean_dist += final_dist[j] / nc;
    }
    for (int j = 0; j < nc; ++j) {
      const double rhs =
          trajectory.algorithm == Algorithm::kSpiral
              ? 0.5 * (final_dist[j] + final_dist[(j + 1) % nc])
              : mean_dist;
      report.add({.k = now.k,
                  .j = j,
                  .lhs = squared_distance(next.theta[j], y),
                  .rhs = rhs});
    }
  }
  return report;
}

InequalityReport check_subgradient_bounds(const ProblemInstance& problem,
                                          const TrajectoryRecord& trajectory,
                                          const BoundSet& bounds) {
  InequalityReport report("subgradient_bound");
  const auto& paths = problem.network.paths;
  for (const IterationRecord& rec : trajectory.iterations) {
    if (has_passes(rec)) {
      for (std::size_t j = 0; j < rec.phi.size(); ++j) {
        const auto& phi = rec.phi[j];
        for (std::size_t i = 1; i < phi.size(); ++i) {
          const NodeData& node = problem.data[paths[j][i - 1]];
          report.add({.k = rec.k,
                      .j = static_cast<int>(j),
                      .i = static_cast<int>(i),
                      .lhs = norm(subgradient(node, phi[i - 1])),
                      .rhs = bounds.c_ij[j][i - 1]});
        }
      }
    } else if (!rec.phi.empty()) {
      // Centralized: every node's gradient at the shared iterate.
      const Estimate& at = rec.theta.front();
      for (std::size_t j = 0; j < paths.size(); ++j) {
        for (std::size_t i = 0; i < paths[j].size(); ++i) {
          report.add({.k = rec.k,
                      .j = static_cast<int>(j),
                      .i = static_cast<int>(i + 1),
                      .lhs = norm(subgradient(problem.data[paths[j][i]], at)),
                      .rhs = bounds.c_ij[j][i]});
        }
      }
    }
  }
  return report;
}

double theorem1_floor(double alpha, const BoundSet& bounds, double f_star) {
  double sum_sq = 0.0;
  for (double c : bounds.c_j) sum_sq += c * c;
  return f_star + 0.5 * alpha * sum_sq;
}

double empirical_liminf(const TrajectoryRecord& trajectory,
                        double tail_fraction) {
  const auto& its = trajectory.iterations;
  if (its.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty trajectory");
  }
  if (!(tail_fraction > 0.0 && tail_fraction <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "tail_fraction must be in (0,1]");
  }
  const auto total = its.size();
  auto tail = static_cast<std::size_t>(
      std::ceil(tail_fraction * static_cast<double>(total)));
  tail = std::clamp<std::size_t>(tail, 1, total);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t t = total - tail; t < total; ++t) {
    best = std::min(best, its[t].total_objective);
  }
  return best;
}

bool AnalysisReport::pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const InequalityReport& r) { return r.pass(); });
}

AnalysisReport analyze(const ProblemInstance& problem,
                       const TrajectoryRecord& trajectory,
                       const StepSizeSchedule& schedule,
                       const AnalysisOptions& options) {
  AnalysisReport report;
  report.optimum = reference_optimum(problem);
  report.bounds = compute_bounds(problem);
  report.floor = theorem1_floor(schedule.alpha0, report.bounds,
                                report.optimum.f_star);
  report.liminf = empirical_liminf(trajectory, options.tail_fraction);

  report.checks.push_back(
      check_subgradient_bounds(problem, trajectory, report.bounds));
  if (trajectory.algorithm == Algorithm::kCentralized) return report;

  const Estimate& star = report.optimum.theta_star;
  report.checks.push_back(check_drift(trajectory, report.bounds));

  InequalityReport lemma = check_lemma1(problem, trajectory, report.bounds, star);
  lemma.name = "lemma1_theta_star";
  InequalityReport descent =
      check_cluster_descent(problem, trajectory, report.bounds, star);
  InequalityReport combine = check_combine_average(trajectory, star);

  InequalityReport lemma_random("lemma1_random_y");
  Rng rng = make_rng(options.probe_seed, RngStream::kProbePoints);
  const FeasibleSet& box = problem.feasible;
  for (int p = 0; p < options.random_probes; ++p) {
    Estimate y = Estimate::zeros(box.dim());
    for (int c = 0; c < box.dim(); ++c) {
      y[c] = std::uniform_real_distribution<double>(box.lower[c],
                                                    box.upper[c])(rng);
    }
    lemma_random.merge(check_lemma1(problem, trajectory, report.bounds, y));
    descent.merge(check_cluster_descent(problem, trajectory, report.bounds, y));
    combine.merge(check_combine_average(trajectory, y));
  }
  report.checks.push_back(std::move(lemma));
  report.checks.push_back(std::move(lemma_random));
  report.checks.push_back(std::move(descent));
  report.checks.push_back(std::move(combine));

  if (schedule.kind == StepSizeSchedule::Kind::kFixed) {
    InequalityReport floor("theorem1_floor");
    floor.add({.k = trajectory.iterations.back().k,
               .lhs = report.liminf,
               .rhs = report.floor});
    report.checks.push_back(std::move(floor));
  }
  return report;
}

}  // namespace spiral
