#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "knnkit/core.hpp"

namespace knnkit {

/// Ordered collection of n points sharing one dimension, stored row-major.
/// Indices 0..n-1 are stable for the lifetime of the dataset.
class Dataset {
 public:
  Dataset() = default;
  explicit Dataset(std::size_t dim);
  /// Takes n*dim coordinates in row-major order.
  Dataset(std::size_t dim, std::vector<double> coords);
  Dataset(std::initializer_list<Point> points);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  bool empty() const noexcept { return coords_.empty(); }

  PointView operator[](std::size_t i) const noexcept {
    return PointView(coords_.data() + i * dim_, dim_);
  }
  const double* data() const noexcept { return coords_.data(); }
  std::span<const double> flat() const noexcept { return coords_; }

  void reserve(std::size_t n) { coords_.reserve(n * dim_); }
  /// Appends a point; throws InvalidInput if its dimension differs.
  void push_back(PointView p);

  /// Throws InvalidInput if any coordinate is NaN or infinite.
  void require_finite() const;

  friend bool operator==(const Dataset&, const Dataset&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<double> coords_;
};

}  // namespace knnkit
