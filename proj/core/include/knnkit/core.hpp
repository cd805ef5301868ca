#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace knnkit {

/// Read-only view of one point's coordinates.
using PointView = std::span<const double>;

/// Owning fixed-dimension coordinate record.
class Point {
 public:
  Point() = default;
  Point(std::initializer_list<double> coords) : coords_(coords) {}
  explicit Point(std::vector<double> coords) : coords_(std::move(coords)) {}
  explicit Point(PointView view) : coords_(view.begin(), view.end()) {}

  std::size_t dim() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  const std::vector<double>& coords() const noexcept { return coords_; }

  operator PointView() const noexcept { return coords_; }

  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::vector<double> coords_;
};

/// A reference point index paired with its squared distance to the query.
struct Neighbor {
  std::size_t index = 0;
  double dist2 = 0.0;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// Total order used for every kNN answer: distance first, index breaks ties.
inline bool closer(const Neighbor& a, const Neighbor& b) noexcept {
  return a.dist2 < b.dist2 || (a.dist2 == b.dist2 && a.index < b.index);
}

/// Axis-aligned box; low[i] <= high[i] for every dimension.
class AxisBox {
 public:
  AxisBox() = default;
  AxisBox(std::vector<double> low, std::vector<double> high);

  /// Tight bounding box of a non-empty set of equal-dimension points.
  static AxisBox bounding(std::span<const double> flat_coords, std::size_t dim);

  std::size_t dim() const noexcept { return low_.size(); }
  const std::vector<double>& low() const noexcept { return low_; }
  const std::vector<double>& high() const noexcept { return high_; }

  bool contains(PointView p) const;

  /// Splits along `dim` at `value`; the returned pair is (lower, upper) half.
  std::pair<AxisBox, AxisBox> split(std::size_t dim, double value) const;

 private:
  std::vector<double> low_;
  std::vector<double> high_;
};

/// Σ (p[i] - q[i])². Throws InvalidInput on dimension mismatch.
double squared_euclidean(PointView p, PointView q);

/// Same sum without the dimension check, for hot loops that validated upfront.
inline double squared_euclidean_unchecked(const double* p, const double* q, std::size_t dim) noexcept {
  double sum = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    const double diff = p[i] - q[i];
    sum += diff * diff;
  }
  return sum;
}

/// Squared distance from q to the nearest point of box; 0 inside or on the boundary.
double box_distance2(const AxisBox& box, PointView q);

/// Squared contribution of one coordinate to box_distance2.
inline double axis_offset2(double low, double high, double q) noexcept {
  if (q < low) return (low - q) * (low - q);
  if (q > high) return (q - high) * (q - high);
  return 0.0;
}

/// Child-box distance from the parent's by swapping the split dimension's
/// contribution: parent - old + new. Throws InternalInvariant when the old
/// contribution exceeds the parent total beyond rounding.
double incremental_box_distance2(double parent_dist2, double old_offset2, double new_offset2);

/// True iff every coordinate is finite.
bool all_finite(PointView p) noexcept;

}  // namespace knnkit
