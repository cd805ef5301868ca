#pragma once

#include <cstddef>
#include <vector>

#include "knnkit/core.hpp"
#include "knnkit/dataset.hpp"

namespace knnkit {

/// Exhaustive kNN: distances to every reference, then the k smallest in
/// (dist2, index) order. Requires 1 <= k <= refs.size().
std::vector<Neighbor> brute_knn(const Dataset& refs, PointView query, std::size_t k);

/// brute_knn for every query row.
std::vector<std::vector<Neighbor>> brute_knn_batch(const Dataset& refs, const Dataset& queries,
                                                   std::size_t k);

/// kNN join of a set with itself; row i never contains i. Requires n >= 2
/// and 1 <= k <= n-1.
std::vector<std::vector<Neighbor>> brute_knn_join(const Dataset& set, std::size_t k);

}  // namespace knnkit
