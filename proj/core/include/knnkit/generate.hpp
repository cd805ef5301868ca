#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "knnkit/core.hpp"
#include "knnkit/dataset.hpp"

namespace knnkit {

/// Named so reports can state which generator produced a dataset.
inline constexpr const char* kRngName = "mt19937_64";

/// Seeded source with a platform-independent stream: std::mt19937_64 words
/// mapped to doubles by hand rather than through std:: distributions, whose
/// output is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1) with 53 random bits.
  double uniform01() noexcept { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double low, double high) noexcept { return low + (high - low) * uniform01(); }
  /// Standard normal via Box-Muller.
  double normal() noexcept;

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

enum class GenMode { uniform, blobs };

struct GenSpec {
  GenMode mode = GenMode::uniform;
  /// Exactly one of n / size_mb must be set.
  std::optional<std::size_t> n;
  std::optional<double> size_mb;
  std::size_t dim = 2;
  std::uint64_t seed = 1;
  /// Per-dimension [low, high]; empty means [0, 1] in every dimension.
  std::vector<std::pair<double, double>> bounds;
  /// Blob centers; empty means blob_count centers drawn uniformly in bounds.
  std::vector<Point> centers;
  std::size_t blob_count = 3;
  double sigma = 0.05;
};

/// floor(size_mb * 2^20 / (8 * dim)): points of `dim` 8-byte coordinates
/// fitting in size_mb binary megabytes.
std::size_t points_for_size_mb(double size_mb, std::size_t dim);

/// n, or the MB-derived count. Throws InvalidParameter if the spec is invalid.
std::size_t resolved_count(const GenSpec& spec);

/// Deterministic for a fixed spec. Uniform mode draws each coordinate
/// independently inside bounds; blobs mode assigns point i to center
/// i mod centers and adds isotropic Gaussian noise.
Dataset generate(const GenSpec& spec);

/// spec.centers, or the centers blobs mode would draw for this seed.
std::vector<Point> blob_centers(const GenSpec& spec);

/// Throws InvalidParameter describing the first problem found.
void validate(const GenSpec& spec);

const char* to_string(GenMode mode) noexcept;

}  // namespace knnkit
