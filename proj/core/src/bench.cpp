#include "knnkit/bench.hpp"

#include <sys/utsname.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <optional>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>

#include "knnkit/bruteforce.hpp"
#include "knnkit/error.hpp"

namespace knnkit {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string machine_description() {
  utsname info{};
  std::string desc = "unknown";
  if (uname(&info) == 0) desc = std::string(info.sysname) + " " + info.release + " " + info.machine;
  return desc + ", " + std::to_string(std::thread::hardware_concurrency()) + " hardware threads";
}

struct QueryRun {
  std::vector<std::vector<Neighbor>> rows;
  std::uint64_t leaf_points_examined = 0;
  double seconds = 0.0;
};

QueryRun run_queries(Engine engine, const Dataset& refs, const KdTree* tree, const Dataset& queries,
                     std::size_t k, double epsilon) {
  QueryRun run;
  run.rows.reserve(queries.size());
  SearchStats stats;
  const SearchParams params{k, epsilon,
                            engine == Engine::kdtree_priority ? SearchOrder::priority : SearchOrder::standard};
  const auto start = Clock::now();
  for (std::size_t q = 0; q < queries.size(); ++q) {
    if (engine == Engine::brute) {
      run.rows.push_back(brute_knn(refs, queries[q], k));
    } else {
      run.rows.push_back(approx_knn_search(*tree, queries[q], params, &stats));
    }
  }
  run.seconds = seconds_since(start);
  run.leaf_points_examined =
      engine == Engine::brute ? static_cast<std::uint64_t>(refs.size()) * queries.size() : stats.leaf_points_examined;
  return run;
}

BenchCell run_cell(const BenchConfig& config, Engine engine, std::size_t k, const Dataset& refs,
                   const Dataset& queries) {
  BenchCell cell;
  cell.engine = engine;
  cell.k = k;
  cell.epsilon = config.epsilon;
  cell.n = refs.size();
  cell.d = refs.dim();
  cell.bucket_size = config.bucket_size;

  std::optional<KdTree> tree;
  if (engine != Engine::brute) {
    const auto start = Clock::now();
    tree.emplace(build_kdtree(refs, config.bucket_size));
    cell.build_seconds = seconds_since(start);
  }

  double best = std::numeric_limits<double>::infinity();
  QueryRun last;
  for (std::size_t rep = 0; rep < config.repetitions; ++rep) {
    last = run_queries(engine, refs, tree ? &*tree : nullptr, queries, k, config.epsilon);
    best = std::min(best, last.seconds);
  }
  cell.total_query_seconds = best;
  cell.mean_query_seconds = best / static_cast<double>(queries.size());
  cell.leaf_points_examined = last.leaf_points_examined;
  cell.checksum = distance_checksum(last.rows);
  return cell;
}

}  // namespace

std::uint64_t query_seed_for(std::uint64_t seed) noexcept { return seed + 0x9E3779B97F4A7C15ULL; }

std::string distance_checksum(const std::vector<std::vector<Neighbor>>& rows) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (const auto& row : rows) {
    for (const Neighbor& nb : row) {
      const auto bits = std::bit_cast<std::uint64_t>(nb.dist2);
      for (int byte = 0; byte < 8; ++byte) {
        hash ^= (bits >> (8 * byte)) & 0xffU;
        hash *= 0x100000001b3ULL;
      }
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

void validate(const BenchConfig& config) {
  validate(config.gen);
  if (config.k_values.empty()) throw InvalidParameter("k_values must not be empty");
  if (config.query_count == 0) throw InvalidParameter("query_count must be >= 1");
  if (config.repetitions == 0) throw InvalidParameter("repetitions must be >= 1");
  if (config.bucket_size == 0) throw InvalidParameter("bucket_size must be >= 1");
  if (config.engines.empty()) throw InvalidParameter("at least one engine is required");
  if (!(config.epsilon >= 0.0) || !std::isfinite(config.epsilon)) {
    throw InvalidParameter("epsilon must be a finite non-negative number");
  }
}

BenchReport run_benchmark(const BenchConfig& config) {
  validate(config);
  BenchReport report;
  report.config = config;
  report.metadata.timestamp = utc_timestamp();
  report.metadata.machine = machine_description();
  report.metadata.query_seed = query_seed_for(config.gen.seed);

  const Dataset refs = generate(config.gen);
  GenSpec query_spec = config.gen;
  query_spec.seed = report.metadata.query_seed;
  query_spec.n = config.query_count;
  query_spec.size_mb.reset();
  if (query_spec.mode == GenMode::blobs) query_spec.centers = blob_centers(config.gen);
  const Dataset queries = generate(query_spec);

  for (const Engine engine : config.engines) {
    for (const std::size_t k : config.k_values) {
      try {
        report.cells.push_back(run_cell(config, engine, k, refs, queries));
      } catch (const std::exception& e) {
        throw std::runtime_error(std::string("benchmark cell engine=") + to_string(engine) +
                                 " k=" + std::to_string(k) + " failed: " + e.what());
      }
    }
  }
  return report;
}

const char* to_string(Engine engine) noexcept {
  switch (engine) {
    case Engine::brute:
      return "brute";
    case Engine::kdtree_standard:
      return "kdtree-standard";
    case Engine::kdtree_priority:
      return "kdtree-priority";
  }
  return "?";
}

Engine parse_engine(const std::string& name) {
  for (const Engine e : {Engine::brute, Engine::kdtree_standard, Engine::kdtree_priority}) {
    if (name == to_string(e)) return e;
  }
  throw InvalidParameter("unknown engine '" + name + "' (expected brute, kdtree-standard or kdtree-priority)");
}

}  // namespace knnkit
