#include "spiral/optimizer.h"

#include <algorithm>
#include <string>
#include <thread>

#include "spiral/errors.h"

namespace spiral {
namespace {

void record_objectives(const ProblemInstance& problem, IterationRecord& rec) {
  rec.cluster_objective.resize(rec.theta.size());
  rec.total_objective = 0.0;
  for (std::size_t j = 0; j < rec.theta.size(); ++j) {
    rec.cluster_objective[j] =
        cluster_cost(problem, static_cast<int>(j), rec.theta[j]);
    rec.total_objective += rec.cluster_objective[j];
  }
}

template <typename Fn>
void for_each_cluster(int clusters, int threads, Fn&& fn) {
  threads = std::clamp(threads, 1, clusters);
  if (threads == 1) {
    for (int j = 0; j < clusters; ++j) fn(j);
    return;
  }
  std::vector<std::jthread> workers;
  workers.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    workers.emplace_back([&, t] {
      for (int j = t; j < clusters; j += threads) fn(j);
    });
  }
}

}  // namespace

ClusterPass cluster_pass(const ProblemInstance& problem, int cluster,
                         const Estimate& theta_init, double alpha, int k) {
  const auto& path = problem.network.paths.at(cluster);
  ClusterPass pass;
  pass.sub_iterates.reserve(path.size() + 1);
  pass.sub_iterates.push_back(theta_init);
  Estimate phi = theta_init;
  for (std::size_t i = 1; i <= path.size(); ++i) {
    Estimate g = subgradient(problem.data[path[i - 1]], phi);
    for (int c = 0; c < phi.dim(); ++c) phi[c] -= alpha * g[c];
    if (!phi.finite()) {
      throw DivergenceError(k, cluster, static_cast<int>(i));
    }
    phi = project(phi, problem.feasible);
    pass.sub_iterates.push_back(phi);
  }
  pass.final_phi = std::move(phi);
  return pass;
}

std::vector<Estimate> spiral_combine(std::span<const Estimate> finals,
                                     const FeasibleSet& feasible) {
  const std::size_t nc = finals.size();
  if (nc < 2) {
    throw Error(ErrorCode::kInvalidConfiguration,
                "spiral combine needs at least two clusters");
  }
  std::vector<Estimate> out;
  out.reserve(nc);
  for (std::size_t j = 0; j < nc; ++j) {
    const Estimate& own = finals[j];
    const Estimate& next = finals[(j + 1) % nc];
    Estimate avg = Estimate::zeros(own.dim());
    for (int c = 0; c < own.dim(); ++c) avg[c] = (own[c] + next[c]) / 2.0;
    out.push_back(project(avg, feasible));
  }
  return out;
}

Estimate fusion_combine(std::span<const Estimate> finals,
                        const FeasibleSet& feasible) {
  if (finals.empty()) {
    throw Error(ErrorCode::kInvalidConfiguration,
                "fusion combine needs at least one cluster");
  }
  Estimate avg = Estimate::zeros(finals.front().dim());
  for (const Estimate& f : finals) {
    for (int c = 0; c < avg.dim(); ++c) avg[c] += f[c];
  }
  for (int c = 0; c < avg.dim(); ++c) {
    avg[c] /= static_cast<double>(finals.size());
  }
  return project(avg, feasible);
}

TrajectoryRecord run(const ProblemInstance& problem, Algorithm algorithm,
                     const StepSizeSchedule& schedule, int iterations,
                     const Estimate& initial_theta, const RunOptions& options) {
  if (iterations < 1) {
    throw Error(ErrorCode::kInvalidConfiguration, "iterations must be >= 1");
  }
  if (!(schedule.alpha0 >= 0.0)) {
    throw Error(ErrorCode::kInvalidConfiguration, "step size must be >= 0");
  }
  if (!problem.feasible.contains(initial_theta)) {
    throw Error(ErrorCode::kInvalidArgument,
                "initial estimate lies outside the feasible set");
  }
  const int nc = problem.network.cluster_count();
  if (algorithm == Algorithm::kSpiral && nc < 2) {
    throw Error(ErrorCode::kInvalidConfiguration,
                "spiral algorithm needs at least two clusters");
  }

  TrajectoryRecord traj;
  traj.algorithm = algorithm;
  traj.iterations.reserve(iterations + 1);
  std::vector<Estimate> theta(nc, initial_theta);

  // Gradient of the aggregate cost, for the centralized reference.
  auto full_gradient = [&](const Estimate& at) {
    Estimate g = Estimate::zeros(at.dim());
    for (const auto& node : problem.data) {
      Estimate gi = subgradient(node, at);
      for (int c = 0; c < g.dim(); ++c) g[c] += gi[c];
    }
    return g;
  };

  for (int k = 1; k <= iterations; ++k) {
    IterationRecord rec;
    rec.k = k;
    rec.alpha = schedule.at(k);
    rec.theta = theta;
    record_objectives(problem, rec);

    if (algorithm == Algorithm::kCentralized) {
      rec.phi.assign(nc, std::vector<Estimate>{theta.front()});
      Estimate next = theta.front();
      Estimate g = full_gradient(next);
      for (int c = 0; c < next.dim(); ++c) next[c] -= rec.alpha * g[c];
      if (!next.finite()) throw DivergenceError(k, 0, 0);
      theta.assign(nc, project(next, problem.feasible));
    } else {
      std::vector<ClusterPass> passes(nc);
      for_each_cluster(nc, options.threads, [&](int j) {
        passes[j] = cluster_pass(problem, j, theta[j], rec.alpha, k);
      });
      std::vector<Estimate> finals;
      finals.reserve(nc);
      rec.phi.reserve(nc);
      for (auto& pass : passes) {
        finals.push_back(pass.final_phi);
        rec.phi.push_back(std::move(pass.sub_iterates));
      }
      if (algorithm == Algorithm::kSpiral) {
        theta = spiral_combine(finals, problem.feasible);
      } else {
        theta.assign(nc, fusion_combine(finals, problem.feasible));
      }
    }

    if (options.metering) {
      traj.ledger += meter_iteration(problem.network, algorithm,
                                     *options.metering, k);
    }
    rec.cum_bit_meters = traj.ledger.total_bm();
    traj.iterations.push_back(std::move(rec));
  }

  IterationRecord last;
  last.k = iterations + 1;
  last.alpha = schedule.at(iterations + 1);
  last.theta = std::move(theta);
  record_objectives(problem, last);
  last.cum_bit_meters = traj.ledger.total_bm();
  traj.iterations.push_back(std::move(last));
  return traj;
}

}  // namespace spiral
