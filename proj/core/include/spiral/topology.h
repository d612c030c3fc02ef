#ifndef SPIRAL_TOPOLOGY_H_
#define SPIRAL_TOPOLOGY_H_

#include <cstdint>
#include <span>
#include <vector>

namespace spiral {

// Position of a sensor inside the unit square, in meters.
struct NodePosition {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const NodePosition&, const NodePosition&) = default;
};

double distance(const NodePosition& a, const NodePosition& b);

// A clustered deployment. Cluster j is traversed along paths[j], which starts
// at heads[j] and visits every member once. Immutable once built.
struct NetworkInstance {
  std::vector<NodePosition> positions;
  std::vector<int> cluster_of;
  std::vector<int> heads;
  std::vector<std::vector<int>> paths;

  int node_count() const { return static_cast<int>(positions.size()); }
  int cluster_count() const { return static_cast<int>(heads.size()); }
  int cluster_size() const {
    return heads.empty() ? 0 : node_count() / cluster_count();
  }

  // Throws Error(kInvalidInstance) when any structural invariant is broken.
  void validate() const;

  friend bool operator==(const NetworkInstance&,
                         const NetworkInstance&) = default;
};

// n i.i.d. uniform positions on [0,1]^2. Throws kInvalidSize for n == 0.
std::vector<NodePosition> place_nodes(int n, std::uint64_t seed);

// Balanced geographic clustering.
//
// The square is cut into a cols x rows grid with cols = ceil(sqrt(n_C)) and
// rows = ceil(n_C / cols). Cells are numbered row by row in serpentine order,
// so consecutive cluster indices are grid neighbours; cells numbered n_C and
// above hold no cluster. Each node starts in the cell containing it. Then, in
// ascending node index, a node whose cell is over capacity (n / n_C, or 0
// for a spare cell) moves to the nearest under-full cluster cell center.
std::vector<int> assign_clusters(std::span<const NodePosition> positions,
                                 int cluster_count);

struct HeadsAndPaths {
  std::vector<int> heads;
  std::vector<std::vector<int>> paths;
};

// Head = member nearest the cluster centroid; path = greedy nearest-neighbour
// tour from the head. Ties go to the lowest node index.
HeadsAndPaths select_heads_and_paths(std::span<const NodePosition> positions,
                                     std::span<const int> cluster_of,
                                     int cluster_count);

// Assembles and validates an instance from fixed positions.
NetworkInstance make_network(std::vector<NodePosition> positions,
                             int cluster_count);

// place_nodes + make_network.
NetworkInstance build_network(int n, int cluster_count, std::uint64_t seed);

}  // namespace spiral

#endif  // SPIRAL_TOPOLOGY_H_
