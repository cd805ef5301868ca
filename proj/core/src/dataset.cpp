#include "knnkit/dataset.hpp"

#include <string>

#include "knnkit/error.hpp"

namespace knnkit {

Dataset::Dataset(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw InvalidInput("dataset dimension must be >= 1");
}

Dataset::Dataset(std::size_t dim, std::vector<double> coords) : dim_(dim), coords_(std::move(coords)) {
  if (dim == 0) throw InvalidInput("dataset dimension must be >= 1");
  if (coords_.size() % dim != 0) {
    throw InvalidInput("coordinate count " + std::to_string(coords_.size()) +
                       " is not a multiple of dimension " + std::to_string(dim));
  }
}

Dataset::Dataset(std::initializer_list<Point> points) {
  if (points.size() == 0) return;
  dim_ = points.begin()->dim();
  if (dim_ == 0) throw InvalidInput("dataset dimension must be >= 1");
  reserve(points.size());
  for (const Point& p : points) push_back(p);
}

void Dataset::push_back(PointView p) {
  if (dim_ == 0 && coords_.empty()) dim_ = p.size();
  if (p.size() != dim_ || dim_ == 0) {
    throw InvalidInput("point of dimension " + std::to_string(p.size()) +
                       " added to dataset of dimension " + std::to_string(dim_));
  }
  coords_.insert(coords_.end(), p.begin(), p.end());
}

void Dataset::require_finite() const {
  for (std::size_t i = 0; i < size(); ++i) {
    if (!all_finite((*this)[i])) {
      throw InvalidInput("point " + std::to_string(i) + " has a non-finite coordinate");
    }
  }
}

}  // namespace knnkit
