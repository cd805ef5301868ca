#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "knnkit/core.hpp"
#include "knnkit/dataset.hpp"

namespace knnkit {

inline constexpr std::size_t kDefaultBucketSize = 8;

/// One node of the flattened tree. Split nodes have both children set and
/// describe the cell extent along their split dimension; leaves own the
/// contiguous range [begin, end) of KdTree::point_order().
struct KdNode {
  std::uint32_t split_dim = 0;
  double split_value = 0.0;
  double cell_low = 0.0;
  double cell_high = 0.0;
  std::int32_t left = -1;
  std::int32_t right = -1;
  std::uint32_t begin = 0;
  std::uint32_t end = 0;

  bool is_leaf() const noexcept { return left < 0; }
  std::size_t leaf_size() const noexcept { return end - begin; }
};

/// Immutable median-split k-d tree over a private copy of the dataset.
/// Split dimension cycles with depth; every left subtree holds coordinates
/// <= split_value and every right subtree holds coordinates >= split_value.
class KdTree {
 public:
  const Dataset& source() const noexcept { return source_; }
  std::size_t dim() const noexcept { return source_.dim(); }
  std::size_t size() const noexcept { return source_.size(); }
  std::size_t bucket_size() const noexcept { return bucket_size_; }
  const AxisBox& bounds() const noexcept { return bounds_; }

  const std::vector<KdNode>& nodes() const noexcept { return nodes_; }
  const KdNode& root() const noexcept { return nodes_.front(); }
  /// Dataset indices in leaf order.
  const std::vector<std::size_t>& point_order() const noexcept { return order_; }
  std::span<const std::size_t> leaf_indices(const KdNode& leaf) const noexcept {
    return std::span<const std::size_t>(order_).subspan(leaf.begin, leaf.leaf_size());
  }
  /// Coordinates permuted into leaf order (row-major, dim() per point).
  const double* leaf_coords() const noexcept { return leaf_coords_.data(); }

 private:
  friend KdTree build_kdtree(Dataset points, std::size_t bucket_size);

  Dataset source_;
  std::size_t bucket_size_ = kDefaultBucketSize;
  AxisBox bounds_;
  std::vector<KdNode> nodes_;
  std::vector<std::size_t> order_;
  std::vector<double> leaf_coords_;
};

/// Builds the tree by recursive median partition; subsets of at most
/// bucket_size points become leaves. Throws InvalidInput for an empty or
/// non-finite dataset and InvalidParameter for bucket_size == 0.
KdTree build_kdtree(Dataset points, std::size_t bucket_size = kDefaultBucketSize);

enum class SearchOrder { standard, priority };

struct SearchParams {
  std::size_t k = 1;
  double epsilon = 0.0;
  SearchOrder order = SearchOrder::standard;
};

/// Per-query instrumentation, accumulated across calls.
struct SearchStats {
  std::size_t leaf_points_examined = 0;
  std::size_t leaves_visited = 0;
};

/// Exact nearest neighbour.
Neighbor nn_search(const KdTree& tree, PointView query);

/// Exact k nearest neighbours, sorted by (dist2, index).
std::vector<Neighbor> knn_search(const KdTree& tree, PointView query, std::size_t k);

/// k neighbours whose rank-i true distance is within (1 + epsilon) of the
/// exact rank-i distance. epsilon == 0 gives the exact answer.
std::vector<Neighbor> approx_knn_search(const KdTree& tree, PointView query,
                                        const SearchParams& params, SearchStats* stats = nullptr);

/// kNN join of the indexed set with itself using approx_knn_search; row i
/// never contains i. Requires 1 <= params.k <= n-1.
std::vector<std::vector<Neighbor>> tree_knn_join(const KdTree& tree, const SearchParams& params,
                                                 SearchStats* stats = nullptr);

struct TreeStats {
  std::size_t node_count = 0;
  std::size_t leaf_count = 0;
  std::size_t depth = 0;  // levels; a single leaf has depth 1
  std::size_t bucket_size = 0;
};

TreeStats tree_stats(const KdTree& tree);

const char* to_string(SearchOrder order) noexcept;

}  // namespace knnkit
