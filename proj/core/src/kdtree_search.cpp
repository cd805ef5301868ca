#include <cmath>
#include <functional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "knnkit/error.hpp"
#include "knnkit/kdtree.hpp"
#include "knnkit/knn_collector.hpp"

namespace knnkit {

namespace {

constexpr std::size_t kNoExclusion = static_cast<std::size_t>(-1);

// Shared state for one query. Box distances are squared; a subtree is
// visited only while box_dist2 * (1 + eps)^2 <= current k-th best dist2,
// which bounds every returned true distance by (1 + eps) times the exact one.
class QuerySearch {
 public:
  QuerySearch(const KdTree& tree, PointView query, const SearchParams& params, std::size_t exclude,
              SearchStats& stats)
      : nodes_(tree.nodes()),
        order_(tree.point_order()),
        leaf_coords_(tree.leaf_coords()),
        dim_(tree.dim()),
        query_(query.data()),
        slack2_((1.0 + params.epsilon) * (1.0 + params.epsilon)),
        exclude_(exclude),
        stats_(stats),
        best_(params.k),
        root_dist2_(box_distance2(tree.bounds(), query)) {}

  std::vector<Neighbor> run(SearchOrder order) && {
    if (order == SearchOrder::priority) {
      search_priority();
    } else {
      search_standard(0, root_dist2_);
    }
    return std::move(best_).take_sorted();
  }

 private:
  bool worth_visiting(double box_dist2) const noexcept { return box_dist2 * slack2_ <= best_.worst_dist2(); }

  // Distance to the far child's box: only the split dimension's term changes,
  // from the query's offset to the parent cell to its offset to the plane.
  double far_child_dist2(const KdNode& node, double box_dist2, double cut_diff) const {
    const double q = query_[node.split_dim];
    double old_offset = cut_diff < 0 ? node.cell_low - q : q - node.cell_high;
    if (old_offset < 0) old_offset = 0;
    return incremental_box_distance2(box_dist2, old_offset * old_offset, cut_diff * cut_diff);
  }

  void scan_leaf(const KdNode& leaf) {
    ++stats_.leaves_visited;
    for (std::size_t pos = leaf.begin; pos < leaf.end; ++pos) {
      const std::size_t index = order_[pos];
      if (index == exclude_) continue;
      ++stats_.leaf_points_examined;
      best_.offer({index, squared_euclidean_unchecked(leaf_coords_ + pos * dim_, query_, dim_)});
    }
  }

  // Nearer child first; the sibling is reconsidered on unwind.
  void search_standard(std::int32_t index, double box_dist2) {
    const KdNode& node = nodes_[static_cast<std::size_t>(index)];
    if (node.is_leaf()) {
      scan_leaf(node);
      return;
    }
    const double cut_diff = query_[node.split_dim] - node.split_value;
    const std::int32_t near = cut_diff < 0 ? node.left : node.right;
    const std::int32_t far = cut_diff < 0 ? node.right : node.left;
    search_standard(near, box_dist2);
    const double far_dist2 = far_child_dist2(node, box_dist2, cut_diff);
    if (worth_visiting(far_dist2)) search_standard(far, far_dist2);
  }

  // Cells come off a min-queue by box distance; each is descended to its
  // nearest leaf, queueing the far siblings passed on the way.
  void search_priority() {
    using Entry = std::pair<double, std::int32_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
    queue.emplace(root_dist2_, 0);
    while (!queue.empty()) {
      auto [box_dist2, index] = queue.top();
      queue.pop();
      if (!worth_visiting(box_dist2)) break;
      const KdNode* node = &nodes_[static_cast<std::size_t>(index)];
      while (!node->is_leaf()) {
        const double cut_diff = query_[node->split_dim] - node->split_value;
        const std::int32_t near = cut_diff < 0 ? node->left : node->right;
        const std::int32_t far = cut_diff < 0 ? node->right : node->left;
        const double far_dist2 = far_child_dist2(*node, box_dist2, cut_diff);
        if (worth_visiting(far_dist2)) queue.emplace(far_dist2, far);
        node = &nodes_[static_cast<std::size_t>(near)];
      }
      scan_leaf(*node);
    }
  }

  const std::vector<KdNode>& nodes_;
  const std::vector<std::size_t>& order_;
  const double* leaf_coords_;
  std::size_t dim_;
  const double* query_;
  double slack2_;
  std::size_t exclude_;
  SearchStats& stats_;
  KnnCollector best_;
  double root_dist2_;
};

void check_query(const KdTree& tree, PointView query) {
  if (query.size() != tree.dim()) {
    throw InvalidInput("query dimension " + std::to_string(query.size()) + " differs from tree dimension " +
                       std::to_string(tree.dim()));
  }
}

void check_params(const SearchParams& params, std::size_t max_k) {
  if (params.k < 1 || params.k > max_k) {
    throw InvalidParameter("k=" + std::to_string(params.k) + " outside [1, " + std::to_string(max_k) + "]");
  }
  if (!(params.epsilon >= 0.0) || !std::isfinite(params.epsilon)) {
    throw InvalidParameter("epsilon must be a finite non-negative number");
  }
}

}  // namespace

Neighbor nn_search(const KdTree& tree, PointView query) { return knn_search(tree, query, 1).front(); }

std::vector<Neighbor> knn_search(const KdTree& tree, PointView query, std::size_t k) {
  return approx_knn_search(tree, query, SearchParams{k, 0.0, SearchOrder::standard});
}

std::vector<Neighbor> approx_knn_search(const KdTree& tree, PointView query, const SearchParams& params,
                                        SearchStats* stats) {
  check_query(tree, query);
  check_params(params, tree.size());
  SearchStats local;
  return QuerySearch(tree, query, params, kNoExclusion, stats ? *stats : local).run(params.order);
}

std::vector<std::vector<Neighbor>> tree_knn_join(const KdTree& tree, const SearchParams& params,
                                                 SearchStats* stats) {
  if (tree.size() < 2) throw InvalidParameter("kNN join needs at least 2 points");
  check_params(params, tree.size() - 1);
  SearchStats local;
  SearchStats& sink = stats ? *stats : local;
  std::vector<std::vector<Neighbor>> rows;
  rows.reserve(tree.size());
  for (std::size_t i = 0; i < tree.size(); ++i) {
    rows.push_back(QuerySearch(tree, tree.source()[i], params, i, sink).run(params.order));
  }
  return rows;
}

}  // namespace knnkit
