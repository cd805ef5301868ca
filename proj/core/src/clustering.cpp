#include "knnkit/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "knnkit/bruteforce.hpp"
#include "knnkit/error.hpp"

namespace knnkit {

namespace {

void validate(const ClusterParams& params, std::size_t n) {
  if (n < 2) throw InvalidParameter("clustering needs at least 2 points");
  if (params.k < 1 || params.k > n - 1) {
    throw InvalidParameter("k=" + std::to_string(params.k) + " outside [1, " + std::to_string(n - 1) + "]");
  }
  if (!(params.epsilon >= 0.0) || !std::isfinite(params.epsilon)) {
    throw InvalidParameter("epsilon must be a finite non-negative number");
  }
  if (!(params.dist_threshold > 0.0)) throw InvalidParameter("dist_threshold must be > 0");
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

KnnGraph graph_from_neighbor_lists(const std::vector<std::vector<Neighbor>>& lists,
                                   const ClusterParams& params) {
  const std::size_t n = lists.size();
  struct Arc {
    std::size_t from;
    std::size_t to;
    double dist2;
  };
  std::vector<Arc> arcs;
  for (std::size_t i = 0; i < n; ++i) {
    for (const Neighbor& nb : lists[i]) {
      if (nb.index >= n || nb.index == i) {
        throw InvalidInput("neighbour list " + std::to_string(i) + " holds invalid index " +
                           std::to_string(nb.index));
      }
      if (std::sqrt(nb.dist2) > params.dist_threshold) continue;
      arcs.push_back({i, nb.index, nb.dist2});
    }
  }
  const auto arc_less = [](const Arc& x, const Arc& y) {
    return std::pair(x.from, x.to) < std::pair(y.from, y.to);
  };
  std::sort(arcs.begin(), arcs.end(), arc_less);

  KnnGraph graph;
  graph.n = n;
  for (const Arc& arc : arcs) {
    if (params.linkage == Linkage::mutual) {
      // Each mutual pair is emitted once, from its lower endpoint.
      if (arc.from > arc.to) continue;
      if (!std::binary_search(arcs.begin(), arcs.end(), Arc{arc.to, arc.from, 0.0}, arc_less)) continue;
    }
    graph.edges.push_back({std::min(arc.from, arc.to), std::max(arc.from, arc.to), arc.dist2});
  }
  std::sort(graph.edges.begin(), graph.edges.end(),
            [](const GraphEdge& x, const GraphEdge& y) { return std::pair(x.a, x.b) < std::pair(y.a, y.b); });
  graph.edges.erase(std::unique(graph.edges.begin(), graph.edges.end(),
                                [](const GraphEdge& x, const GraphEdge& y) { return x.a == y.a && x.b == y.b; }),
                    graph.edges.end());
  return graph;
}

KnnGraph build_knn_graph(const Dataset& points, const ClusterParams& params, const KdTree& index) {
  validate(params, points.size());
  if (index.source() != points) throw InvalidInput("index was not built over this dataset");
  const SearchParams search{params.k, params.epsilon, params.order};
  return graph_from_neighbor_lists(tree_knn_join(index, search), params);
}

KnnGraph build_knn_graph_brute(const Dataset& points, const ClusterParams& params) {
  validate(params, points.size());
  return graph_from_neighbor_lists(brute_knn_join(points, params.k), params);
}

ClusterLabeling connected_components(const KnnGraph& graph) {
  DisjointSets sets(graph.n);
  for (const GraphEdge& e : graph.edges) {
    if (e.a >= graph.n || e.b >= graph.n || e.a == e.b) {
      throw InvalidInput("graph edge (" + std::to_string(e.a) + ", " + std::to_string(e.b) + ") is invalid");
    }
    sets.unite(e.a, e.b);
  }
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> root_label(graph.n, kUnset);
  ClusterLabeling out;
  out.labels.resize(graph.n);
  // Ascending scan meets each component first at its minimum index.
  for (std::size_t i = 0; i < graph.n; ++i) {
    std::size_t& label = root_label[sets.find(i)];
    if (label == kUnset) label = out.cluster_count++;
    out.labels[i] = label;
  }
  return out;
}

ClusterLabeling cluster(const Dataset& points, const ClusterParams& params) {
  validate(params, points.size());
  const KdTree tree = build_kdtree(points, kDefaultBucketSize);
  return connected_components(build_knn_graph(points, params, tree));
}

const char* to_string(Linkage linkage) noexcept {
  return linkage == Linkage::mutual ? "mutual" : "unilateral";
}

}  // namespace knnkit
