#include "knnkit/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "knnkit/error.hpp"

namespace knnkit {

namespace {

void require_same_dim(std::size_t a, std::size_t b) {
  if (a != b) {
    throw InvalidInput("dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

}  // namespace

AxisBox::AxisBox(std::vector<double> low, std::vector<double> high)
    : low_(std::move(low)), high_(std::move(high)) {
  require_same_dim(low_.size(), high_.size());
  for (std::size_t i = 0; i < low_.size(); ++i) {
    if (!(low_[i] <= high_[i])) {
      throw InvalidInput("box low exceeds high in dimension " + std::to_string(i));
    }
  }
}

AxisBox AxisBox::bounding(std::span<const double> flat_coords, std::size_t dim) {
  if (dim == 0 || flat_coords.empty() || flat_coords.size() % dim != 0) {
    throw InvalidInput("bounding box needs a non-empty set of points");
  }
  std::vector<double> low(flat_coords.begin(), flat_coords.begin() + dim);
  std::vector<double> high = low;
  for (std::size_t off = dim; off < flat_coords.size(); off += dim) {
    for (std::size_t i = 0; i < dim; ++i) {
      low[i] = std::min(low[i], flat_coords[off + i]);
      high[i] = std::max(high[i], flat_coords[off + i]);
    }
  }
  return AxisBox(std::move(low), std::move(high));
}

bool AxisBox::contains(PointView p) const {
  require_same_dim(dim(), p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < low_[i] || p[i] > high_[i]) return false;
  }
  return true;
}

std::pair<AxisBox, AxisBox> AxisBox::split(std::size_t dim, double value) const {
  if (dim >= this->dim() || value < low_[dim] || value > high_[dim]) {
    throw InvalidInput("split outside the box");
  }
  AxisBox lower = *this;
  AxisBox upper = *this;
  lower.high_[dim] = value;
  upper.low_[dim] = value;
  return {std::move(lower), std::move(upper)};
}

double squared_euclidean(PointView p, PointView q) {
  require_same_dim(p.size(), q.size());
  return squared_euclidean_unchecked(p.data(), q.data(), p.size());
}

double box_distance2(const AxisBox& box, PointView q) {
  require_same_dim(box.dim(), q.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    sum += axis_offset2(box.low()[i], box.high()[i], q[i]);
  }
  return sum;
}

double incremental_box_distance2(double parent_dist2, double old_offset2, double new_offset2) {
  double base = parent_dist2 - old_offset2;
  if (base < 0.0) {
    // Repeated incremental updates accumulate rounding; only a real
    // precondition violation exceeds it.
    if (-base > 1e-12 * std::max(parent_dist2, old_offset2)) {
      throw InternalInvariant("incremental box distance: old contribution " +
                              std::to_string(old_offset2) + " exceeds parent " +
                              std::to_string(parent_dist2));
    }
    base = 0.0;
  }
  return base + new_offset2;
}

bool all_finite(PointView p) noexcept {
  return std::all_of(p.begin(), p.end(), [](double c) { return std::isfinite(c); });
}

}  // namespace knnkit
