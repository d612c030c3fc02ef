#include "spiral/cost_model.h"

#include <cmath>
#include <limits>

#include "spiral/errors.h"

namespace spiral {

CostLedger& CostLedger::operator+=(const CostLedger& other) {
  intra_cluster_bm += other.intra_cluster_bm;
  inter_cluster_bm += other.inter_cluster_bm;
  to_fusion_bm += other.to_fusion_bm;
  message_count += other.message_count;
  return *this;
}

CostLedger meter_iteration(const NetworkInstance& network, Algorithm algorithm,
                           const MeteringParams& params, int k) {
  CostLedger ledger;
  const auto& pos = network.positions;
  const double estimate_bits =
      static_cast<double>(params.bits_per_scalar) * params.dim;

  if (algorithm == Algorithm::kCentralized) {
    if (k != 1) return ledger;
    const double upload_bits = static_cast<double>(params.bits_per_scalar) *
                               params.dim * params.observations_per_node;
    for (const auto& p : pos) {
      ledger.to_fusion_bm += upload_bits * distance(p, params.fusion);
      ++ledger.message_count;
    }
    return ledger;
  }

  const int nc = network.cluster_count();
  for (const auto& path : network.paths) {
    for (std::size_t h = 1; h < path.size(); ++h) {
      ledger.intra_cluster_bm +=
          estimate_bits * distance(pos[path[h - 1]], pos[path[h]]);
      ++ledger.message_count;
    }
    if (path.size() > 1) {
      ledger.intra_cluster_bm +=
          estimate_bits * distance(pos[path.back()], pos[path.front()]);
      ++ledger.message_count;
    }
  }

  if (algorithm == Algorithm::kSpiral) {
    for (int j = 0; j < nc; ++j) {
      const int next = network.heads[(j + 1) % nc];
      ledger.inter_cluster_bm +=
          estimate_bits * distance(pos[next], pos[network.heads[j]]);
      ++ledger.message_count;
    }
  } else {
    for (int j = 0; j < nc; ++j) {
      ledger.to_fusion_bm +=
          2.0 * estimate_bits * distance(pos[network.heads[j]], params.fusion);
      ledger.message_count += 2;
    }
  }
  return ledger;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  const double count = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= count;
  my /= count;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  if (sxx == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return sxy / sxx;
}

ScalingStudy scaling_study(std::span<const SweepPoint> points,
                           std::span<const std::uint64_t> seeds,
                           int iterations, const MeteringParams& params) {
  if (seeds.empty() || iterations < 1) {
    throw Error(ErrorCode::kInvalidConfiguration,
                "scaling study needs at least one seed and one iteration");
  }
  constexpr Algorithm kAll[] = {Algorithm::kSpiral, Algorithm::kInCluster,
                                Algorithm::kCentralized};
  ScalingStudy study;
  std::vector<double> nc_axis, spiral_inter, fusion_up;
  for (const SweepPoint& point : points) {
    CostLedger sums[3];
    for (std::uint64_t seed : seeds) {
      NetworkInstance net = build_network(point.n, point.cluster_count, seed);
      CostLedger per_seed[3];
      for (int a = 0; a < 3; ++a) {
        for (int k = 1; k <= iterations; ++k) {
          per_seed[a] += meter_iteration(net, kAll[a], params, k);
        }
        sums[a] += per_seed[a];
      }
      if (per_seed[0].intra_cluster_bm != per_seed[1].intra_cluster_bm) {
        study.intra_equal = false;
      }
    }
    const double s = static_cast<double>(seeds.size());
    for (int a = 0; a < 3; ++a) {
      CostLedger mean = sums[a];
      mean.intra_cluster_bm /= s;
      mean.inter_cluster_bm /= s;
      mean.to_fusion_bm /= s;
      mean.message_count /= static_cast<std::int64_t>(seeds.size());
      study.rows.push_back({point.n, point.cluster_count, kAll[a], mean});
    }
    nc_axis.push_back(point.cluster_count);
    spiral_inter.push_back(study.rows[study.rows.size() - 3].mean.inter_cluster_bm);
    fusion_up.push_back(study.rows[study.rows.size() - 2].mean.to_fusion_bm);
  }
  study.spiral_inter_slope = loglog_slope(nc_axis, spiral_inter);
  study.incluster_fusion_slope = loglog_slope(nc_axis, fusion_up);
  return study;
}

}  // namespace spiral
