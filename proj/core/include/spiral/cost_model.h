#ifndef SPIRAL_COST_MODEL_H_
#define SPIRAL_COST_MODEL_H_

#include <cstdint>
#include <span>
#include <vector>

#include "spiral/algorithm.h"
#include "spiral/topology.h"

namespace spiral {

// Transport cost in bit-meters, split by link class.
struct CostLedger {
  double intra_cluster_bm = 0.0;
  double inter_cluster_bm = 0.0;
  double to_fusion_bm = 0.0;
  std::int64_t message_count = 0;

  double total_bm() const {
    return intra_cluster_bm + inter_cluster_bm + to_fusion_bm;
  }

  CostLedger& operator+=(const CostLedger& other);
  friend CostLedger operator+(CostLedger a, const CostLedger& b) {
    return a += b;
  }
  friend bool operator==(const CostLedger&, const CostLedger&) = default;
};

struct MeteringParams {
  int bits_per_scalar = 32;
  int dim = 1;
  int observations_per_node = 10;  // only the centralized upload uses this
  NodePosition fusion{0.5, 0.5};
};

// Cost of iteration k (1-based).
//
// Spiral and in-cluster share the intra-cluster part: the running estimate
// hops along each path and the last sub-iterate returns to the head in one
// straight-line message. Spiral then adds one head_{j+1} -> head_j leg per
// cluster; in-cluster adds a head -> fusion upload and fusion -> head
// broadcast per cluster. Centralized is one-shot: every node uploads its m
// observations during iteration 1 and nothing moves afterwards.
CostLedger meter_iteration(const NetworkInstance& network, Algorithm algorithm,
                           const MeteringParams& params, int k);

struct SweepPoint {
  int n = 0;
  int cluster_count = 0;
};

struct ScalingRow {
  int n = 0;
  int cluster_count = 0;
  Algorithm algorithm = Algorithm::kSpiral;
  CostLedger mean;  // averaged over seeds, summed over iterations
};

struct ScalingStudy {
  std::vector<ScalingRow> rows;
  // log-log slopes against n_C; NaN with fewer than two distinct n_C.
  double spiral_inter_slope = 0.0;
  double incluster_fusion_slope = 0.0;
  // Intra-cluster cost of spiral and in-cluster matched exactly on every
  // (point, seed).
  bool intra_equal = true;
};

ScalingStudy scaling_study(std::span<const SweepPoint> points,
                           std::span<const std::uint64_t> seeds,
                           int iterations, const MeteringParams& params);

// Ordinary least-squares slope of log(y) against log(x).
double loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace spiral

#endif  // SPIRAL_COST_MODEL_H_
