#ifndef SPIRAL_OPTIMIZER_H_
#define SPIRAL_OPTIMIZER_H_

#include <optional>
#include <span>
#include <vector>

#include "spiral/algorithm.h"
#include "spiral/cost_model.h"
#include "spiral/problem.h"

namespace spiral {

struct StepSizeSchedule {
  enum class Kind { kFixed, kDiminishing };

  Kind kind = Kind::kFixed;
  double alpha0 = 0.007;

  static StepSizeSchedule fixed(double alpha) { return {Kind::kFixed, alpha}; }
  static StepSizeSchedule diminishing(double alpha0) {
    return {Kind::kDiminishing, alpha0};
  }

  // k is 1-based.
  double at(int k) const {
    return kind == Kind::kFixed ? alpha0 : alpha0 / static_cast<double>(k);
  }
};

// Result of one incremental sweep along a cluster path. sub_iterates[0] is
// the starting value and sub_iterates[i] the value after the i-th path node.
struct ClusterPass {
  Estimate final_phi;
  std::vector<Estimate> sub_iterates;
};

// phi_i = project(phi_{i-1} - alpha * grad f_{path[i]}(phi_{i-1})).
// k is only used to label a DivergenceError.
ClusterPass cluster_pass(const ProblemInstance& problem, int cluster,
                         const Estimate& theta_init, double alpha, int k = 0);

// out[j] = project((finals[j] + finals[(j+1) mod n_C]) / 2), all read from
// the same snapshot. Needs n_C >= 2.
std::vector<Estimate> spiral_combine(std::span<const Estimate> finals,
                                     const FeasibleSet& feasible);

// Projected mean of all finals.
Estimate fusion_combine(std::span<const Estimate> finals,
                        const FeasibleSet& feasible);

// State at the start of iteration k. The last record of a trajectory is the
// terminal state after the final combine and has empty phi.
struct IterationRecord {
  int k = 0;
  double alpha = 0.0;
  std::vector<Estimate> theta;             // theta_{j,k}
  std::vector<std::vector<Estimate>> phi;  // phi_{i,j,k}, i = 0..n_S
  std::vector<double> cluster_objective;   // f_j(theta_{j,k})
  double total_objective = 0.0;
  double cum_bit_meters = 0.0;             // through the end of iteration k
};

struct TrajectoryRecord {
  Algorithm algorithm = Algorithm::kSpiral;
  std::vector<IterationRecord> iterations;  // K + 1 entries
  CostLedger ledger;

  int iteration_count() const {
    return iterations.empty() ? 0 : static_cast<int>(iterations.size()) - 1;
  }
  const IterationRecord& terminal() const { return iterations.back(); }
};

struct RunOptions {
  // Cluster passes of one iteration run on this many threads. Results are
  // bit-identical for any value.
  int threads = 1;
  // When set, the run is metered and cum_bit_meters / ledger are filled.
  std::optional<MeteringParams> metering;
};

TrajectoryRecord run(const ProblemInstance& problem, Algorithm algorithm,
                     const StepSizeSchedule& schedule, int iterations,
                     const Estimate& initial_theta,
                     const RunOptions& options = {});

}  // namespace spiral

#endif  // SPIRAL_OPTIMIZER_H_
