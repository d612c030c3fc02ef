#ifndef SPIRAL_ANALYSIS_H_
#define SPIRAL_ANALYSIS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "spiral/optimizer.h"
#include "spiral/problem.h"

namespace spiral {

// Absolute slack granted to every inequality check for rounding noise.
inline constexpr double kViolationTolerance = 1e-9;

// Subgradient-norm bounds over the feasible box.
struct BoundSet {
  std::vector<std::vector<double>> c_ij;  // [cluster][position along path]
  std::vector<double> c_j;                // sum_i c_ij
  double c_total = 0.0;                   // sum_j c_j
  double c_hat = 0.0;                     // sum_j c_j^2
};

// For f_i = sum_r ||theta - x_r||^2 the gradient is 2 m (theta - mean(x)),
// whose norm over a box peaks at the corner farthest from the mean. That
// supremum is used as C_{i,j}. Throws kUnboundedFeasibleSet for open boxes.
BoundSet compute_bounds(const ProblemInstance& problem);

struct InequalityRow {
  int k = 0;
  int j = -1;  // -1 when the row aggregates over clusters
  int i = -1;  // -1 when the row is not per sub-step
  double lhs = 0.0;
  double rhs = 0.0;

  double margin() const { return rhs - lhs; }
  bool holds() const { return lhs <= rhs + kViolationTolerance; }
};

struct InequalityReport {
  explicit InequalityReport(std::string check_name = {})
      : name(std::move(check_name)) {}

  std::string name;
  std::vector<InequalityRow> rows;
  int violations = 0;
  double worst_margin = 0.0;  // min over rows of rhs - lhs

  bool pass() const { return violations == 0; }
  void add(const InequalityRow& row);
  // Folds another report's rows into this one.
  void merge(const InequalityReport& other);
};

// sum_j ||theta_{j,k+1} - y||^2
//   <= sum_j ||theta_{j,k} - y||^2 - 2 a_k sum_j (f_j(theta_{j,k}) - f_j(y))
//      + a_k^2 C_hat
// for every k with a successor state. Throws kInvalidArgument if y is not
// in the feasible set.
InequalityReport check_lemma1(const ProblemInstance& problem,
                              const TrajectoryRecord& trajectory,
                              const BoundSet& bounds, const Estimate& y);

// ||phi_{i,j,k} - phi_{0,j,k}|| <= a_k sum_{p<=i} C_{p,j}
InequalityReport check_drift(const TrajectoryRecord& trajectory,
                             const BoundSet& bounds);

// Per-cluster descent over one full pass:
// ||phi_{n_S,j,k} - y||^2
//   <= ||phi_{0,j,k} - y||^2 - 2 a_k (f_j(phi_{0,j,k}) - f_j(y)) + a_k^2 C_j^2
InequalityReport check_cluster_descent(const ProblemInstance& problem,
                                       const TrajectoryRecord& trajectory,
                                       const BoundSet& bounds,
                                       const Estimate& y);

// The combine step never moves a cluster farther (in mean square) from y
// than the finals it averages. Spiral: the pair (j, j+1); in-cluster: all.
InequalityReport check_combine_average(const TrajectoryRecord& trajectory,
                                       const Estimate& y);

// Every gradient evaluated during a pass is within its C_{i,j}.
InequalityReport check_subgradient_bounds(const ProblemInstance& problem,
                                          const TrajectoryRecord& trajectory,
                                          const BoundSet& bounds);

// f(theta*) + alpha/2 * sum_j C_j^2
double theorem1_floor(double alpha, const BoundSet& bounds, double f_star);

// Minimum summed objective over the last tail_fraction of recorded states
// (at least one state).
double empirical_liminf(const TrajectoryRecord& trajectory,
                        double tail_fraction);

struct AnalysisOptions {
  int random_probes = 10;
  std::uint64_t probe_seed = 0;
  double tail_fraction = 0.5;
};

struct AnalysisReport {
  std::vector<InequalityReport> checks;
  ReferenceOptimum optimum;
  BoundSet bounds;
  // Only meaningful for fixed schedules.
  double floor = 0.0;
  double liminf = 0.0;

  bool pass() const;
};

// Runs every check that applies to the trajectory's algorithm. Spiral and
// in-cluster get the full set; centralized runs only the gradient-bound
// check. The Theorem 1 floor is checked for fixed schedules only.
AnalysisReport analyze(const ProblemInstance& problem,
                       const TrajectoryRecord& trajectory,
                       const StepSizeSchedule& schedule,
                       const AnalysisOptions& options = {});

}  // namespace spiral

#endif  // SPIRAL_ANALYSIS_H_
