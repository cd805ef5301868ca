#pragma once

// Test-only oracles. These deliberately avoid the library's search paths:
// distances are recomputed with a local loop and answers come from a full
// sort, so they stay independent of what they check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "knnkit/dataset.hpp"
#include "knnkit/kdtree.hpp"

namespace knnkit::testing {

inline double oracle_dist2(PointView a, PointView b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return s;
}

/// Sorted ascending full distance row, optionally skipping one index.
inline std::vector<double> sorted_distance_row(const Dataset& refs, PointView q,
                                               std::size_t skip = static_cast<std::size_t>(-1)) {
  std::vector<double> row;
  for (std::size_t i = 0; i < refs.size(); ++i) {
    if (i != skip) row.push_back(oracle_dist2(refs[i], q));
  }
  std::sort(row.begin(), row.end());
  return row;
}

inline std::vector<double> dist2_of(const std::vector<Neighbor>& answer) {
  std::vector<double> out;
  for (const Neighbor& nb : answer) out.push_back(nb.dist2);
  return out;
}

/// Squared distance from q to the box's nearest point, found by clamping.
inline double clamp_box_distance2(const std::vector<double>& low, const std::vector<double>& high, PointView q) {
  double s = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double nearest = std::clamp(q[i], low[i], high[i]);
    s += (q[i] - nearest) * (q[i] - nearest);
  }
  return s;
}

/// Component ids from a boolean reachability matrix (Warshall closure),
/// numbered by ascending minimum member.
inline std::vector<std::size_t> closure_labels(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) reach[i][i] = 1;
  for (const auto& [a, b] : edges) reach[a][b] = reach[b][a] = 1;
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t i = 0; i < n; ++i)
      if (reach[i][m])
        for (std::size_t j = 0; j < n; ++j)
          if (reach[m][j]) reach[i][j] = 1;
  std::vector<std::size_t> labels(n);
  std::size_t next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t first = i;
    for (std::size_t j = 0; j < i; ++j) {
      if (reach[i][j]) {
        first = j;
        break;
      }
    }
    labels[i] = first == i ? next++ : labels[first];
  }
  return labels;
}

/// Smallest t with bucket * 2^t >= n, plus one: the depth bound of a
/// balanced median-split tree, computed without floating point.
inline std::size_t depth_bound(std::size_t n, std::size_t bucket) {
  std::size_t t = 0;
  while (bucket * (std::size_t{1} << t) < n) ++t;
  return t + 1;
}

struct TreeCheck {
  bool ok = true;
  std::string failure;
  std::size_t depth = 0;

  void fail(const std::string& why) {
    if (ok) failure = why;
    ok = false;
  }
};

namespace detail {

inline std::vector<std::size_t> walk(const KdTree& tree, std::int32_t index, std::size_t level,
                                     std::vector<double>& low, std::vector<double>& high, TreeCheck& check) {
  const KdNode& node = tree.nodes().at(static_cast<std::size_t>(index));
  check.depth = std::max(check.depth, level);
  const Dataset& pts = tree.source();
  if (node.is_leaf()) {
    const auto span = tree.leaf_indices(node);
    if (span.empty() || span.size() > tree.bucket_size()) check.fail("leaf occupancy out of range");
    for (std::size_t idx : span) {
      for (std::size_t j = 0; j < pts.dim(); ++j) {
        if (pts[idx][j] < low[j] || pts[idx][j] > high[j]) check.fail("leaf point outside its cell");
      }
    }
    return {span.begin(), span.end()};
  }
  const std::size_t s = node.split_dim;
  if (s != (level - 1) % pts.dim()) check.fail("split dimension does not cycle with depth");
  if (node.cell_low != low[s] || node.cell_high != high[s]) check.fail("recorded cell extent is wrong");
  const double saved_high = high[s];
  high[s] = node.split_value;
  auto left = walk(tree, node.left, level + 1, low, high, check);
  high[s] = saved_high;
  const double saved_low = low[s];
  low[s] = node.split_value;
  auto right = walk(tree, node.right, level + 1, low, high, check);
  low[s] = saved_low;

  for (std::size_t idx : left)
    if (pts[idx][s] > node.split_value) check.fail("left point above split value");
  for (std::size_t idx : right)
    if (pts[idx][s] < node.split_value) check.fail("right point below split value");
  const std::size_t a = left.size();
  const std::size_t b = right.size();
  if ((a > b ? a - b : b - a) > 1) check.fail("subtree sizes differ by more than 1");
  left.insert(left.end(), right.begin(), right.end());
  return left;
}

}  // namespace detail

/// Full-tree walk of every structural invariant.
inline TreeCheck check_tree(const KdTree& tree) {
  TreeCheck check;
  std::vector<double> low = tree.bounds().low();
  std::vector<double> high = tree.bounds().high();
  auto all = detail::walk(tree, 0, 1, low, high, check);
  std::sort(all.begin(), all.end());
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (all[i] != i) {
      check.fail("leaf union is not the dataset");
      break;
    }
  }
  if (all.size() != tree.size()) check.fail("leaf union size differs from dataset size");
  if (check.depth > depth_bound(tree.size(), tree.bucket_size())) check.fail("depth exceeds bound");
  return check;
}

/// Uniform points in [0, scale)^d drawn with a std:: engine, independent of
/// the library generator.
inline Dataset random_uniform(std::mt19937_64& rng, std::size_t n, std::size_t d, double scale = 1.0) {
  std::uniform_real_distribution<double> u(0.0, scale);
  std::vector<double> coords(n * d);
  for (double& c : coords) c = u(rng);
  return Dataset(d, std::move(coords));
}

}  // namespace knnkit::testing
