#include "knnkit/generate.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "knnkit/error.hpp"

namespace knnkit {

double Rng::normal() noexcept {
  if (spare_) {
    const double value = *spare_;
    spare_.reset();
    return value;
  }
  // 1 - u keeps the log argument in (0, 1].
  const double radius = std::sqrt(-2.0 * std::log(1.0 - uniform01()));
  const double angle = 2.0 * std::numbers::pi * uniform01();
  spare_ = radius * std::sin(angle);
  return radius * std::cos(angle);
}

std::size_t points_for_size_mb(double size_mb, std::size_t dim) {
  if (!(size_mb > 0.0) || !std::isfinite(size_mb)) throw InvalidParameter("size_mb must be > 0");
  if (dim == 0) throw InvalidParameter("dim must be >= 1");
  return static_cast<std::size_t>(std::floor(size_mb * 1048576.0 / (8.0 * static_cast<double>(dim))));
}

void validate(const GenSpec& spec) {
  if (spec.n.has_value() == spec.size_mb.has_value()) {
    throw InvalidParameter("exactly one of n and size_mb must be set");
  }
  if (spec.dim == 0) throw InvalidParameter("dim must be >= 1");
  if (spec.size_mb) points_for_size_mb(*spec.size_mb, spec.dim);
  if (!spec.bounds.empty()) {
    if (spec.bounds.size() != spec.dim) throw InvalidParameter("bounds must give one range per dimension");
    for (const auto& [low, high] : spec.bounds) {
      if (!std::isfinite(low) || !std::isfinite(high) || !(low <= high)) {
        throw InvalidParameter("each bound needs finite low <= high");
      }
    }
  }
  if (spec.mode == GenMode::blobs) {
    if (!(spec.sigma >= 0.0) || !std::isfinite(spec.sigma)) throw InvalidParameter("sigma must be >= 0");
    if (spec.centers.empty() && spec.blob_count == 0) throw InvalidParameter("blobs mode needs centers");
    for (const Point& c : spec.centers) {
      if (c.dim() != spec.dim || !all_finite(c)) {
        throw InvalidParameter("every blob center needs " + std::to_string(spec.dim) + " finite coordinates");
      }
    }
  }
}

std::size_t resolved_count(const GenSpec& spec) {
  validate(spec);
  return spec.n ? *spec.n : points_for_size_mb(*spec.size_mb, spec.dim);
}

namespace {

std::vector<std::pair<double, double>> effective_bounds(const GenSpec& spec) {
  if (!spec.bounds.empty()) return spec.bounds;
  return std::vector<std::pair<double, double>>(spec.dim, {0.0, 1.0});
}

// Centers come from their own stream so point generation does not depend on
// whether centers were given explicitly.
constexpr std::uint64_t kCenterStream = 0xC3A5C85C97CB3127ULL;

}  // namespace

std::vector<Point> blob_centers(const GenSpec& spec) {
  if (!spec.centers.empty()) return spec.centers;
  const auto bounds = effective_bounds(spec);
  Rng rng(spec.seed ^ kCenterStream);
  std::vector<Point> centers;
  for (std::size_t c = 0; c < spec.blob_count; ++c) {
    std::vector<double> center(spec.dim);
    for (std::size_t j = 0; j < spec.dim; ++j) center[j] = rng.uniform(bounds[j].first, bounds[j].second);
    centers.emplace_back(std::move(center));
  }
  return centers;
}

Dataset generate(const GenSpec& spec) {
  const std::size_t n = resolved_count(spec);
  const std::size_t d = spec.dim;
  const auto bounds = effective_bounds(spec);

  Rng rng(spec.seed);
  std::vector<double> coords;
  coords.reserve(n * d);

  if (spec.mode == GenMode::uniform) {
    for (std::size_t i = 0; i < n * d; ++i) {
      const auto& [low, high] = bounds[i % d];
      coords.push_back(rng.uniform(low, high));
    }
    return Dataset(d, std::move(coords));
  }

  const std::vector<Point> centers = blob_centers(spec);
  for (std::size_t i = 0; i < n; ++i) {
    const Point& center = centers[i % centers.size()];
    for (std::size_t j = 0; j < d; ++j) coords.push_back(center[j] + spec.sigma * rng.normal());
  }
  return Dataset(d, std::move(coords));
}

const char* to_string(GenMode mode) noexcept { return mode == GenMode::blobs ? "blobs" : "uniform"; }

}  // namespace knnkit
