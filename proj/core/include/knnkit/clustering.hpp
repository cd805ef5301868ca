#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "knnkit/core.hpp"
#include "knnkit/dataset.hpp"
#include "knnkit/kdtree.hpp"

namespace knnkit {

enum class Linkage { mutual, unilateral };

struct ClusterParams {
  std::size_t k = 1;
  double epsilon = 0.0;
  /// Maximum true distance for a kNN arc to count; infinity means unbounded.
  double dist_threshold = std::numeric_limits<double>::infinity();
  Linkage linkage = Linkage::unilateral;
  SearchOrder order = SearchOrder::standard;
};

struct GraphEdge {
  std::size_t a = 0;  // a < b
  std::size_t b = 0;
  double dist2 = 0.0;

  friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
};

/// Undirected kNN graph; edges sorted by (a, b), no self-loops or duplicates.
struct KnnGraph {
  std::size_t n = 0;
  std::vector<GraphEdge> edges;
};

struct ClusterLabeling {
  std::vector<std::size_t> labels;
  std::size_t cluster_count = 0;

  friend bool operator==(const ClusterLabeling&, const ClusterLabeling&) = default;
};

/// Turns per-point neighbour lists (self already excluded) into a graph
/// according to params.linkage and params.dist_threshold.
KnnGraph graph_from_neighbor_lists(const std::vector<std::vector<Neighbor>>& lists,
                                   const ClusterParams& params);

/// Approximate kNN graph through the tree. `index` must be built over `points`.
KnnGraph build_knn_graph(const Dataset& points, const ClusterParams& params, const KdTree& index);

/// Same graph from the exhaustive join; the oracle for build_knn_graph.
KnnGraph build_knn_graph_brute(const Dataset& points, const ClusterParams& params);

/// Component labels numbered by ascending minimum member index.
ClusterLabeling connected_components(const KnnGraph& graph);

/// Builds a default-bucket tree, the kNN graph, then its components.
ClusterLabeling cluster(const Dataset& points, const ClusterParams& params);

const char* to_string(Linkage linkage) noexcept;

}  // namespace knnkit
