#ifndef SPIRAL_PROBLEM_H_
#define SPIRAL_PROBLEM_H_

#include <cstdint>
#include <span>
#include <vector>

#include "spiral/topology.h"

namespace spiral {

// The decision variable theta. Dimension 1 in every default experiment.
struct Estimate {
  std::vector<double> value;

  Estimate() = default;
  explicit Estimate(std::vector<double> v) : value(std::move(v)) {}
  static Estimate scalar(double v) { return Estimate({v}); }
  static Estimate zeros(int dim) { return Estimate(std::vector<double>(dim)); }

  int dim() const { return static_cast<int>(value.size()); }
  double operator[](int c) const { return value[c]; }
  double& operator[](int c) { return value[c]; }
  bool finite() const;

  friend bool operator==(const Estimate&, const Estimate&) = default;
};

double squared_distance(const Estimate& a, const Estimate& b);
double norm(const Estimate& a);

// Axis-aligned box. lower < upper componentwise.
struct FeasibleSet {
  std::vector<double> lower;
  std::vector<double> upper;

  static FeasibleSet box(int dim, double lower, double upper);

  int dim() const { return static_cast<int>(lower.size()); }
  bool contains(const Estimate& theta) const;
  bool bounded() const;
  Estimate center() const;
  // Throws kInvalidArgument unless lower < upper in every coordinate.
  void validate() const;
};

// m private observations of one node, each a dim-vector, stored row-major.
struct NodeData {
  int dim = 1;
  std::vector<double> values;

  int count() const { return dim == 0 ? 0 : static_cast<int>(values.size()) / dim; }
  std::span<const double> observation(int r) const {
    return std::span<const double>(values).subspan(r * dim, dim);
  }
  Estimate mean() const;
};

struct ProblemInstance {
  NetworkInstance network;
  std::vector<NodeData> data;  // indexed by node
  FeasibleSet feasible;

  int dim() const { return feasible.dim(); }
  void validate() const;
};

// observation = true_theta + N(0, noise_std^2) in every coordinate.
std::vector<NodeData> generate_observations(const NetworkInstance& network,
                                            int m, double true_theta,
                                            double noise_std,
                                            std::uint64_t seed, int dim = 1);

// f_i(theta) = sum_r ||theta - x_r||^2
double local_cost(const NodeData& node, const Estimate& theta);
// grad f_i(theta) = 2 sum_r (theta - x_r)
Estimate subgradient(const NodeData& node, const Estimate& theta);
// Componentwise clamp onto the box.
Estimate project(const Estimate& theta, const FeasibleSet& feasible);

// f_j: sum of local costs over the members of cluster j.
double cluster_cost(const ProblemInstance& problem, int cluster,
                    const Estimate& theta);
double total_cost(const ProblemInstance& problem, const Estimate& theta);

struct ReferenceOptimum {
  Estimate theta_star;
  double f_star = 0.0;
};

// Constrained minimizer of the aggregate cost: the pooled observation mean
// clamped to the box (the cost is separable and isotropic per coordinate).
ReferenceOptimum reference_optimum(const ProblemInstance& problem);

}  // namespace spiral

#endif  // SPIRAL_PROBLEM_H_
