#include "knnkit/kdtree.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include "knnkit/error.hpp"

namespace knnkit {

namespace {

class TreeBuilder {
 public:
  TreeBuilder(const Dataset& points, std::size_t bucket_size, std::vector<KdNode>& nodes,
              std::vector<std::size_t>& order)
      : points_(points), bucket_size_(bucket_size), nodes_(nodes), order_(order) {}

  // Cell extents are carried down so each split node records its cell's
  // range along the split dimension, which the search needs for
  // incremental box distances.
  std::int32_t build(std::size_t begin, std::size_t end, std::size_t depth, std::vector<double>& cell_low,
                     std::vector<double>& cell_high) {
    const auto node_index = static_cast<std::int32_t>(nodes_.size());
    nodes_.emplace_back();
    const std::size_t count = end - begin;
    if (count <= bucket_size_) {
      nodes_[node_index].begin = static_cast<std::uint32_t>(begin);
      nodes_[node_index].end = static_cast<std::uint32_t>(end);
      return node_index;
    }

    const std::size_t dim = depth % points_.dim();
    const auto first = order_.begin() + static_cast<std::ptrdiff_t>(begin);
    const auto mid = first + static_cast<std::ptrdiff_t>(count / 2);
    const auto last = order_.begin() + static_cast<std::ptrdiff_t>(end);
    std::nth_element(first, mid, last, [&](std::size_t a, std::size_t b) {
      return points_[a][dim] < points_[b][dim];
    });
    const double median = points_[*mid][dim];
    const std::size_t split = begin + count / 2;

    {
      KdNode& node = nodes_[node_index];
      node.split_dim = static_cast<std::uint32_t>(dim);
      node.split_value = median;
      node.cell_low = cell_low[dim];
      node.cell_high = cell_high[dim];
    }

    const double saved_high = cell_high[dim];
    cell_high[dim] = median;
    const std::int32_t left = build(begin, split, depth + 1, cell_low, cell_high);
    cell_high[dim] = saved_high;

    const double saved_low = cell_low[dim];
    cell_low[dim] = median;
    const std::int32_t right = build(split, end, depth + 1, cell_low, cell_high);
    cell_low[dim] = saved_low;

    nodes_[node_index].left = left;
    nodes_[node_index].right = right;
    return node_index;
  }

 private:
  const Dataset& points_;
  std::size_t bucket_size_;
  std::vector<KdNode>& nodes_;
  std::vector<std::size_t>& order_;
};

}  // namespace

KdTree build_kdtree(Dataset points, std::size_t bucket_size) {
  if (bucket_size == 0) throw InvalidParameter("bucket_size must be >= 1");
  if (points.empty()) throw InvalidInput("cannot build a k-d tree over an empty dataset");
  if (points.size() >= static_cast<std::size_t>(std::numeric_limits<std::int32_t>::max())) {
    throw InvalidInput("dataset too large for a k-d tree");
  }
  points.require_finite();

  KdTree tree;
  tree.bucket_size_ = bucket_size;
  tree.bounds_ = AxisBox::bounding(points.flat(), points.dim());
  tree.order_.resize(points.size());
  std::iota(tree.order_.begin(), tree.order_.end(), std::size_t{0});
  tree.nodes_.reserve(2 * (points.size() / bucket_size) + 1);

  std::vector<double> cell_low = tree.bounds_.low();
  std::vector<double> cell_high = tree.bounds_.high();
  TreeBuilder(points, bucket_size, tree.nodes_, tree.order_).build(0, points.size(), 0, cell_low, cell_high);

  const std::size_t d = points.dim();
  tree.leaf_coords_.resize(points.size() * d);
  for (std::size_t pos = 0; pos < tree.order_.size(); ++pos) {
    const PointView p = points[tree.order_[pos]];
    std::copy(p.begin(), p.end(), tree.leaf_coords_.begin() + static_cast<std::ptrdiff_t>(pos * d));
  }
  tree.source_ = std::move(points);
  return tree;
}

TreeStats tree_stats(const KdTree& tree) {
  TreeStats stats;
  stats.node_count = tree.nodes().size();
  stats.bucket_size = tree.bucket_size();
  std::vector<std::pair<std::int32_t, std::size_t>> stack{{0, 1}};
  while (!stack.empty()) {
    const auto [index, level] = stack.back();
    stack.pop_back();
    stats.depth = std::max(stats.depth, level);
    const KdNode& node = tree.nodes()[static_cast<std::size_t>(index)];
    if (node.is_leaf()) {
      ++stats.leaf_count;
    } else {
      stack.emplace_back(node.left, level + 1);
      stack.emplace_back(node.right, level + 1);
    }
  }
  return stats;
}

const char* to_string(SearchOrder order) noexcept {
  switch (order) {
    case SearchOrder::standard:
      return "standard";
    case SearchOrder::priority:
      return "priority";
  }
  return "?";
}

}  // namespace knnkit
