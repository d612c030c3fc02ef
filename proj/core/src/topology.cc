#include "spiral/topology.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "spiral/errors.h"
#include "spiral/random.h"

namespace spiral {
namespace {

void check_partition_sizes(int n, int cluster_count) {
  if (n <= 0 || cluster_count <= 0) {
    throw Error(ErrorCode::kInvalidSize,
                "node and cluster counts must be positive");
  }
  if (n % cluster_count != 0) {
    throw Error(ErrorCode::kInvalidSize,
                "n = " + std::to_string(n) + " is not divisible by n_C = " +
                    std::to_string(cluster_count));
  }
}

struct Grid {
  int cols;
  int rows;

  NodePosition center(int cell) const {
    int row = cell / cols;
    int col = cell % cols;
    if (row % 2 == 1) col = cols - 1 - col;
    return {(col + 0.5) / cols, (row + 0.5) / rows};
  }

  int cell_of(const NodePosition& p) const {
    int col = std::clamp(static_cast<int>(p.x * cols), 0, cols - 1);
    int row = std::clamp(static_cast<int>(p.y * rows), 0, rows - 1);
    if (row % 2 == 1) col = cols - 1 - col;
    return row * cols + col;
  }
};

Grid grid_for(int cluster_count) {
  int cols = static_cast<int>(std::ceil(std::sqrt(cluster_count)));
  // Guard against sqrt rounding for perfect squares.
  while (cols * cols < cluster_count) ++cols;
  while (cols > 1 && (cols - 1) * (cols - 1) >= cluster_count) --cols;
  int rows = (cluster_count + cols - 1) / cols;
  return {cols, rows};
}

}  // namespace

double distance(const NodePosition& a, const NodePosition& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

std::vector<NodePosition> place_nodes(int n, std::uint64_t seed) {
  if (n <= 0) {
    throw Error(ErrorCode::kInvalidSize, "place_nodes needs n >= 1");
  }
  Rng rng = make_rng(seed, RngStream::kPlacement);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<NodePosition> out(n);
  for (auto& p : out) {
    p.x = unit(rng);
    p.y = unit(rng);
  }
  return out;
}

std::vector<int> assign_clusters(std::span<const NodePosition> positions,
                                 int cluster_count) {
  const int n = static_cast<int>(positions.size());
  check_partition_sizes(n, cluster_count);
  const int capacity = n / cluster_count;
  const Grid grid = grid_for(cluster_count);

  std::vector<int> cluster_of(n);
  std::vector<int> load(grid.cols * grid.rows, 0);
  for (int v = 0; v < n; ++v) {
    cluster_of[v] = grid.cell_of(positions[v]);
    ++load[cluster_of[v]];
  }
  auto cap = [&](int cell) { return cell < cluster_count ? capacity : 0; };

  for (int v = 0; v < n; ++v) {
    int cell = cluster_of[v];
    if (load[cell] <= cap(cell)) continue;
    int best = -1;
    double best_dist = std::numeric_limits<double>::infinity();
    for (int c = 0; c < cluster_count; ++c) {
      if (load[c] >= capacity) continue;
      double dist = distance(positions[v], grid.center(c));
      if (dist < best_dist) {
        best_dist = dist;
        best = c;
      }
    }
    // Total capacity equals n, so an over-full cell implies an under-full one.
    --load[cell];
    ++load[best];
    cluster_of[v] = best;
  }
  return cluster_of;
}

HeadsAndPaths select_heads_and_paths(std::span<const NodePosition> positions,
                                     std::span<const int> cluster_of,
                                     int cluster_count) {
  if (positions.size() != cluster_of.size() || cluster_count <= 0) {
    throw Error(ErrorCode::kInvalidInstance,
                "cluster map does not match the node set");
  }
  std::vector<std::vector<int>> members(cluster_count);
  for (int v = 0; v < static_cast<int>(cluster_of.size()); ++v) {
    int c = cluster_of[v];
    if (c < 0 || c >= cluster_count) {
      throw Error(ErrorCode::kInvalidInstance,
                  "node " + std::to_string(v) + " has cluster index " +
                      std::to_string(c) + " out of range");
    }
    members[c].push_back(v);
  }

  HeadsAndPaths out;
  out.heads.reserve(cluster_count);
  out.paths.reserve(cluster_count);
  for (int c = 0; c < cluster_count; ++c) {
    const auto& group = members[c];
    if (group.empty()) {
      throw Error(ErrorCode::kInvalidInstance,
                  "cluster " + std::to_string(c) + " is empty");
    }
    NodePosition centroid;
    for (int v : group) {
      centroid.x += positions[v].x;
      centroid.y += positions[v].y;
    }
    centroid.x /= static_cast<double>(group.size());
    centroid.y /= static_cast<double>(group.size());

    // Members are in ascending index order, so strict < keeps the lowest
    // index on ties.
    int head = group.front();
    double head_dist = distance(positions[head], centroid);
    for (int v : group) {
      double dist = distance(positions[v], centroid);
      if (dist < head_dist) {
        head = v;
        head_dist = dist;
      }
    }

    std::vector<int> path{head};
    std::vector<bool> used(group.size(), false);
    used[std::find(group.begin(), group.end(), head) - group.begin()] = true;
    while (path.size() < group.size()) {
      const NodePosition& at = positions[path.back()];
      std::size_t next = group.size();
      double next_dist = std::numeric_limits<double>::infinity();
      for (std::size_t m = 0; m < group.size(); ++m) {
        if (used[m]) continue;
        double dist = distance(at, positions[group[m]]);
        if (dist < next_dist) {
          next = m;
          next_dist = dist;
        }
      }
      used[next] = true;
      path.push_back(group[next]);
    }
    out.heads.push_back(head);
    out.paths.push_back(std::move(path));
  }
  return out;
}

void NetworkInstance::validate() const {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kInvalidInstance, what);
  };
  const int n = node_count();
  const int nc = cluster_count();
  if (n == 0 || nc == 0) fail("empty network");
  if (n % nc != 0) fail("n is not divisible by n_C");
  if (static_cast<int>(cluster_of.size()) != n) fail("cluster map size");
  if (static_cast<int>(paths.size()) != nc) fail("path count");
  for (const auto& p : positions) {
    if (!(p.x >= 0.0 && p.x <= 1.0 && p.y >= 0.0 && p.y <= 1.0)) {
      fail("position outside the unit square");
    }
  }
  const int size = n / nc;
  std::vector<int> seen(n, 0);
  for (int c = 0; c < nc; ++c) {
    const auto& path = paths[c];
    if (static_cast<int>(path.size()) != size) {
      fail("cluster " + std::to_string(c) + " has " +
           std::to_string(path.size()) + " members, expected " +
           std::to_string(size));
    }
    if (path.front() != heads[c]) fail("path does not start at its head");
    for (int v : path) {
      if (v < 0 || v >= n) fail("path member out of range");
      if (cluster_of[v] != c) fail("path member belongs to another cluster");
      if (seen[v]++ != 0) fail("node visited twice");
    }
  }
}

NetworkInstance make_network(std::vector<NodePosition> positions,
                             int cluster_count) {
  NetworkInstance net;
  net.cluster_of = assign_clusters(positions, cluster_count);
  HeadsAndPaths hp =
      select_heads_and_paths(positions, net.cluster_of, cluster_count);
  net.positions = std::move(positions);
  net.heads = std::move(hp.heads);
  net.paths = std::move(hp.paths);
  net.validate();
  return net;
}

NetworkInstance build_network(int n, int cluster_count, std::uint64_t seed) {
  check_partition_sizes(n, cluster_count);
  return make_network(place_nodes(n, seed), cluster_count);
}

}  // namespace spiral
