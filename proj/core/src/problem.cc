#include "spiral/problem.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "spiral/errors.h"
#include "spiral/random.h"

namespace spiral {

bool Estimate::finite() const {
  return std::all_of(value.begin(), value.end(),
                     [](double v) { return std::isfinite(v); });
}

double squared_distance(const Estimate& a, const Estimate& b) {
  double sum = 0.0;
  for (int c = 0; c < a.dim(); ++c) {
    double diff = a[c] - b[c];
    sum += diff * diff;
  }
  return sum;
}

double norm(const Estimate& a) {
  double sum = 0.0;
  for (double v : a.value) sum += v * v;
  return std::sqrt(sum);
}

FeasibleSet FeasibleSet::box(int dim, double lower, double upper) {
  FeasibleSet set{std::vector<double>(dim, lower),
                  std::vector<double>(dim, upper)};
  set.validate();
  return set;
}

bool FeasibleSet::contains(const Estimate& theta) const {
  if (theta.dim() != dim()) return false;
  for (int c = 0; c < dim(); ++c) {
    if (!(theta[c] >= lower[c] && theta[c] <= upper[c])) return false;
  }
  return true;
}

bool FeasibleSet::bounded() const {
  for (int c = 0; c < dim(); ++c) {
    if (!std::isfinite(lower[c]) || !std::isfinite(upper[c])) return false;
  }
  return true;
}

Estimate FeasibleSet::center() const {
  Estimate mid = Estimate::zeros(dim());
  for (int c = 0; c < dim(); ++c) {
    if (std::isfinite(lower[c]) && std::isfinite(upper[c])) {
      mid[c] = 0.5 * (lower[c] + upper[c]);
    } else if (std::isfinite(lower[c])) {
      mid[c] = lower[c];
    } else if (std::isfinite(upper[c])) {
      mid[c] = upper[c];
    }
  }
  return mid;
}

void FeasibleSet::validate() const {
  if (lower.empty() || lower.size() != upper.size()) {
    throw Error(ErrorCode::kInvalidArgument, "feasible box dimension mismatch");
  }
  for (int c = 0; c < dim(); ++c) {
    if (std::isnan(lower[c]) || std::isnan(upper[c]) || !(lower[c] < upper[c])) {
      throw Error(ErrorCode::kInvalidArgument,
                  "feasible box needs lower < upper in coordinate " +
                      std::to_string(c));
    }
  }
}

Estimate NodeData::mean() const {
  Estimate avg = Estimate::zeros(dim);
  const int m = count();
  for (int r = 0; r < m; ++r) {
    auto x = observation(r);
    for (int c = 0; c < dim; ++c) avg[c] += x[c];
  }
  for (int c = 0; c < dim; ++c) avg[c] /= m;
  return avg;
}

void ProblemInstance::validate() const {
  network.validate();
  feasible.validate();
  if (static_cast<int>(data.size()) != network.node_count()) {
    throw Error(ErrorCode::kInvalidInstance,
                "need one observation set per node");
  }
  for (const auto& node : data) {
    if (node.dim != dim() || node.count() < 1 ||
        static_cast<int>(node.values.size()) != node.count() * node.dim) {
      throw Error(ErrorCode::kInvalidInstance, "malformed node observations");
    }
    for (double v : node.values) {
      if (!std::isfinite(v)) {
        throw Error(ErrorCode::kInvalidInstance, "non-finite observation");
      }
    }
  }
}

std::vector<NodeData> generate_observations(const NetworkInstance& network,
                                            int m, double true_theta,
                                            double noise_std,
                                            std::uint64_t seed, int dim) {
  if (m < 1 || dim < 1) {
    throw Error(ErrorCode::kInvalidSize,
                "need at least one observation of dimension >= 1");
  }
  if (!(noise_std >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "noise_std must be >= 0");
  }
  Rng rng = make_rng(seed, RngStream::kObservations);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<NodeData> out(network.node_count());
  for (auto& node : out) {
    node.dim = dim;
    node.values.resize(static_cast<std::size_t>(m) * dim);
    for (double& v : node.values) v = true_theta + noise_std * noise(rng);
  }
  return out;
}

double local_cost(const NodeData& node, const Estimate& theta) {
  double sum = 0.0;
  const int m = node.count();
  for (int r = 0; r < m; ++r) {
    auto x = node.observation(r);
    for (int c = 0; c < node.dim; ++c) {
      double diff = theta[c] - x[c];
      sum += diff * diff;
    }
  }
  return sum;
}

Estimate subgradient(const NodeData& node, const Estimate& theta) {
  Estimate g = Estimate::zeros(node.dim);
  const int m = node.count();
  for (int r = 0; r < m; ++r) {
    auto x = node.observation(r);
    for (int c = 0; c < node.dim; ++c) g[c] += theta[c] - x[c];
  }
  for (double& v : g.value) v *= 2.0;
  return g;
}

Estimate project(const Estimate& theta, const FeasibleSet& feasible) {
  Estimate out = theta;
  for (int c = 0; c < out.dim(); ++c) {
    out[c] = std::clamp(out[c], feasible.lower[c], feasible.upper[c]);
  }
  return out;
}

double cluster_cost(const ProblemInstance& problem, int cluster,
                    const Estimate& theta) {
  double sum = 0.0;
  for (int v : problem.network.paths[cluster]) {
    sum += local_cost(problem.data[v], theta);
  }
  return sum;
}

double total_cost(const ProblemInstance& problem, const Estimate& theta) {
  double sum = 0.0;
  for (int c = 0; c < problem.network.cluster_count(); ++c) {
    sum += cluster_cost(problem, c, theta);
  }
  return sum;
}

ReferenceOptimum reference_optimum(const ProblemInstance& problem) {
  const int dim = problem.dim();
  Estimate mean = Estimate::zeros(dim);
  long long count = 0;
  for (const auto& node : problem.data) {
    for (int r = 0; r < node.count(); ++r) {
      auto x = node.observation(r);
      for (int c = 0; c < dim; ++c) mean[c] += x[c];
      ++count;
    }
  }
  for (int c = 0; c < dim; ++c) mean[c] /= static_cast<double>(count);
  ReferenceOptimum opt;
  opt.theta_star = project(mean, problem.feasible);
  opt.f_star = total_cost(problem, opt.theta_star);
  return opt;
}

}  // namespace spiral
