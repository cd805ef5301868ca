#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <vector>

#include "knnkit/core.hpp"

namespace knnkit {

/// Bounded max-heap holding the k best neighbours seen so far, ordered by
/// (dist2, index).
class KnnCollector {
 public:
  explicit KnnCollector(std::size_t k) : k_(k) { heap_.reserve(k); }

  bool full() const noexcept { return heap_.size() == k_; }

  /// Current pruning radius: the k-th best dist2, or infinity until k
  /// candidates have been seen.
  double worst_dist2() const noexcept {
    return full() ? heap_.front().dist2 : std::numeric_limits<double>::infinity();
  }

  void offer(const Neighbor& candidate) {
    if (!full()) {
      heap_.push_back(candidate);
      std::push_heap(heap_.begin(), heap_.end(), closer);
    } else if (closer(candidate, heap_.front())) {
      std::pop_heap(heap_.begin(), heap_.end(), closer);
      heap_.back() = candidate;
      std::push_heap(heap_.begin(), heap_.end(), closer);
    }
  }

  /// Consumes the collector; result is ascending by (dist2, index).
  std::vector<Neighbor> take_sorted() && {
    std::sort_heap(heap_.begin(), heap_.end(), closer);
    return std::move(heap_);
  }

 private:
  std::size_t k_;
  std::vector<Neighbor> heap_;
};

}  // namespace knnkit
