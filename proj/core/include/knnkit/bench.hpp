#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "knnkit/generate.hpp"
#include "knnkit/kdtree.hpp"

namespace knnkit {

enum class Engine { brute, kdtree_standard, kdtree_priority };

struct BenchConfig {
  GenSpec gen;
  std::vector<std::size_t> k_values{1, 2, 3, 4, 5};
  double epsilon = 0.0;
  std::size_t bucket_size = kDefaultBucketSize;
  std::size_t query_count = 1000;
  std::vector<Engine> engines{Engine::brute, Engine::kdtree_standard, Engine::kdtree_priority};
  std::size_t repetitions = 1;
};

/// One (engine, k) result. Times are wall-clock seconds; query time is the
/// best repetition and never includes the build.
struct BenchCell {
  Engine engine = Engine::brute;
  std::size_t k = 1;
  double epsilon = 0.0;
  std::size_t n = 0;
  std::size_t d = 0;
  std::size_t bucket_size = 0;
  double build_seconds = 0.0;
  double total_query_seconds = 0.0;
  double mean_query_seconds = 0.0;
  std::uint64_t leaf_points_examined = 0;
  std::string checksum;

  friend bool operator==(const BenchCell&, const BenchCell&) = default;
};

struct BenchMetadata {
  std::string timestamp;
  std::string machine;
  std::string rng = kRngName;
  std::string size_conversion = "n = floor(size_mb * 2^20 / (8 * d))";
  std::string brute_strategy = "full distance row + partial_sort(k)";
  std::uint64_t query_seed = 0;

  friend bool operator==(const BenchMetadata&, const BenchMetadata&) = default;
};

struct BenchReport {
  BenchConfig config;
  BenchMetadata metadata;
  std::vector<BenchCell> cells;
};

/// Query seed derived from the dataset seed so the query set is disjoint.
std::uint64_t query_seed_for(std::uint64_t seed) noexcept;

/// FNV-1a over the bit patterns of every dist2, in query then rank order.
std::string distance_checksum(const std::vector<std::vector<Neighbor>>& rows);

/// Runs every engine x k cell sequentially. A failing cell is rethrown as
/// std::runtime_error naming the engine and k.
BenchReport run_benchmark(const BenchConfig& config);

/// Writes the cell CSV to `csv_path` and the JSON sidecar next to it.
void write_report(const BenchReport& report, const std::filesystem::path& csv_path);
/// Reads back a report written by write_report (CSV plus sidecar).
BenchReport read_report(const std::filesystem::path& csv_path);
std::filesystem::path sidecar_path(const std::filesystem::path& csv_path);

void validate(const BenchConfig& config);

const char* to_string(Engine engine) noexcept;
Engine parse_engine(const std::string& name);

}  // namespace knnkit
