// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Tolerances and instance counts are fixed here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "knnkit/knnkit.hpp"
#include "support/oracles.hpp"

using namespace knnkit;
namespace kt = knnkit::testing;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Instance {
  Dataset points;
  Dataset queries;
  std::size_t bucket_size = 8;
  std::string label;
};

// Random instance: n in [10, max_n], d in {2, 3}, uniform or blobs.
Instance make_instance(std::mt19937_64& rng, std::size_t index, std::size_t max_n, std::size_t query_count) {
  static constexpr std::size_t kBuckets[] = {1, 8, 32};
  GenSpec spec;
  spec.mode = index % 2 ? GenMode::blobs : GenMode::uniform;
  spec.n = 10 + rng() % (max_n - 9);
  spec.dim = 2 + (index / 2) % 2;
  spec.seed = rng();
  spec.blob_count = 1 + rng() % 5;
  spec.sigma = 0.01 + 0.1 * Rng(rng()).uniform01();
  Instance inst;
  inst.points = generate(spec);
  GenSpec qspec = spec;
  qspec.n = query_count;
  qspec.seed = query_seed_for(spec.seed);
  if (spec.mode == GenMode::blobs) qspec.centers = blob_centers(spec);
  inst.queries = generate(qspec);
  inst.bucket_size = kBuckets[(index / 4) % 3];
  inst.label = std::string(to_string(spec.mode)) + " n=" + std::to_string(*spec.n) + " d=" +
               std::to_string(spec.dim) + " bucket=" + std::to_string(inst.bucket_size);
  return inst;
}

double elapsed(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

std::vector<Instance> exact_instances() {
  std::mt19937_64 rng(20240601);
  std::vector<Instance> out;
  for (std::size_t i = 0; i < 200; ++i) out.push_back(make_instance(rng, i, 2000, 20));
  return out;
}

Outcome exact_oracle_equivalence(const std::vector<Instance>& instances) {
  const auto start = Clock::now();
  std::size_t compared = 0;
  for (const Instance& inst : instances) {
    const KdTree tree = build_kdtree(inst.points, inst.bucket_size);
    for (std::size_t k = 1; k <= 5; ++k) {
      for (std::size_t q = 0; q < inst.queries.size(); ++q) {
        const auto got = kt::dist2_of(knn_search(tree, inst.queries[q], k));
        const auto want = kt::dist2_of(brute_knn(inst.points, inst.queries[q], k));
        ++compared;
        if (got != want) return {false, "mismatch on " + inst.label + " k=" + std::to_string(k)};
      }
    }
  }
  const double secs = elapsed(start);
  std::ostringstream d;
  d << instances.size() << " instances, " << compared << " queries bitwise equal in " << secs << " s (limit 60)";
  return {secs < 60.0, d.str()};
}

Outcome epsilon_bound() {
  const auto start = Clock::now();
  std::mt19937_64 rng(777);
  std::size_t checked = 0;
  std::size_t violations = 0;
  for (std::size_t i = 0; i < 50; ++i) {
    const Instance inst = make_instance(rng, i, 2000, 20);
    const KdTree tree = build_kdtree(inst.points, inst.bucket_size);
    for (std::size_t q = 0; q < inst.queries.size(); ++q) {
      const auto exact = kt::sorted_distance_row(inst.points, inst.queries[q]);
      for (const double eps : {0.1, 0.5, 1.0, 2.0}) {
        for (const SearchOrder order : {SearchOrder::standard, SearchOrder::priority}) {
          const std::size_t k = 1 + (q % 5);
          const auto got = approx_knn_search(tree, inst.queries[q], {k, eps, order});
          for (std::size_t r = 0; r < k; ++r) {
            ++checked;
            if (std::sqrt(got[r].dist2) > (1.0 + eps) * std::sqrt(exact[r])) ++violations;
          }
        }
      }
    }
  }
  const double secs = elapsed(start);
  std::ostringstream d;
  d << checked << " rank checks, " << violations << " violations, " << secs << " s (limit 60)";
  return {violations == 0 && secs < 60.0, d.str()};
}

Outcome epsilon_zero_exactness(const std::vector<Instance>& instances) {
  std::size_t compared = 0;
  for (const Instance& inst : instances) {
    const KdTree tree = build_kdtree(inst.points, inst.bucket_size);
    for (std::size_t k = 1; k <= 5; ++k) {
      for (std::size_t q = 0; q < inst.queries.size(); ++q) {
        const auto exact = kt::dist2_of(knn_search(tree, inst.queries[q], k));
        for (const SearchOrder order : {SearchOrder::standard, SearchOrder::priority}) {
          ++compared;
          if (kt::dist2_of(approx_knn_search(tree, inst.queries[q], {k, 0.0, order})) != exact) {
            return {false, std::string("mismatch (") + to_string(order) + ") on " + inst.label};
          }
        }
      }
    }
  }
  return {true, std::to_string(compared) + " approximate searches identical to exact"};
}

Outcome tree_invariants() {
  std::mt19937_64 rng(4242);
  static constexpr std::size_t kBuckets[] = {1, 2, 8, 32};
  for (std::size_t i = 0; i < 100; ++i) {
    const std::size_t n = 1 + rng() % 3000;
    const std::size_t d = 1 + i % 3;
    Dataset pts = kt::random_uniform(rng, n, d);
    if (i % 5 == 0) {
      // Heavy duplicates exercise the median tie handling.
      std::vector<double> c(pts.flat().begin(), pts.flat().end());
      for (double& x : c) x = std::floor(x * 3);
      pts = Dataset(d, std::move(c));
    }
    const KdTree tree = build_kdtree(pts, kBuckets[i % 4]);
    const kt::TreeCheck check = kt::check_tree(tree);
    if (!check.ok) {
      return {false, "build " + std::to_string(i) + " (n=" + std::to_string(n) + "): " + check.failure};
    }
  }
  return {true, "100 builds: split, balance, occupancy, leaf-union and depth bound hold"};
}

Outcome clustering_equivalence() {
  std::mt19937_64 rng(99);
  for (std::size_t i = 0; i < 50; ++i) {
    const Instance inst = make_instance(rng, i, 1000, 1);
    ClusterParams p;
    p.k = 1 + i % 5;
    p.linkage = i % 3 == 0 ? Linkage::mutual : Linkage::unilateral;
    p.dist_threshold = i % 2 ? 0.05 : std::numeric_limits<double>::infinity();
    const ClusterLabeling tree_labels = cluster(inst.points, p);
    const ClusterLabeling brute_labels = connected_components(build_knn_graph_brute(inst.points, p));
    if (!(tree_labels == brute_labels)) return {false, "partition differs on " + inst.label};
  }

  GenSpec spec;
  spec.mode = GenMode::blobs;
  spec.n = 100;
  spec.centers = {Point{0, 0}, Point{100, 0}};
  spec.sigma = 1.0;
  spec.seed = 2;
  ClusterParams p;
  p.k = 3;
  p.dist_threshold = 10.0;
  const std::size_t clusters = cluster(generate(spec), p).cluster_count;

  // Informational: how often other seeds of the same instance give exactly 2.
  std::size_t exactly_two = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    spec.seed = seed;
    exactly_two += cluster(generate(spec), p).cluster_count == 2;
  }
  return {clusters == 2, "50 partitions equal to brute join; two-blob instance (seed 2) gives " +
                             std::to_string(clusters) + " clusters; seeds 1-100 give exactly 2 in " +
                             std::to_string(exactly_two) + "/100"};
}

Outcome pruning_effectiveness() {
  const auto start = Clock::now();
  BenchConfig cfg;
  cfg.gen.n = 50000;
  cfg.gen.dim = 2;
  cfg.gen.seed = 1;
  cfg.k_values = {5};
  cfg.epsilon = 0.0;
  cfg.bucket_size = 8;
  cfg.query_count = 2000;
  cfg.engines = {Engine::brute, Engine::kdtree_standard};
  const BenchReport report = run_benchmark(cfg);
  const BenchCell& brute = report.cells.at(0);
  const BenchCell& tree = report.cells.at(1);
  const double ratio = tree.total_query_seconds / brute.total_query_seconds;
  const double mean_examined = static_cast<double>(tree.leaf_points_examined) / cfg.query_count;
  const double fraction = mean_examined / static_cast<double>(*cfg.gen.n);
  const double secs = elapsed(start);
  std::ostringstream d;
  d << "tree/brute query time " << ratio << " (limit 0.5), mean leaf points " << mean_examined << " = "
    << 100 * fraction << "% of n (limit 5%), checksums " << (tree.checksum == brute.checksum ? "equal" : "DIFFER")
    << ", " << secs << " s (limit 120)";
  return {ratio <= 0.5 && fraction < 0.05 && tree.checksum == brute.checksum && secs < 120.0, d.str()};
}

Outcome visit_monotonicity() {
  GenSpec spec;
  spec.n = 20000;
  spec.seed = 5;
  const Dataset pts = generate(spec);
  spec.n = 500;
  spec.seed = query_seed_for(5);
  const Dataset queries = generate(spec);
  const KdTree tree = build_kdtree(pts, 8);
  std::ostringstream d;
  bool pass = true;
  for (const SearchOrder order : {SearchOrder::standard, SearchOrder::priority}) {
    d << to_string(order) << ":";
    std::size_t previous = static_cast<std::size_t>(-1);
    for (const double eps : {0.0, 0.5, 1.0, 2.0}) {
      SearchStats stats;
      for (std::size_t q = 0; q < queries.size(); ++q) approx_knn_search(tree, queries[q], {5, eps, order}, &stats);
      d << ' ' << stats.leaf_points_examined;
      if (stats.leaf_points_examined > previous) pass = false;
      previous = stats.leaf_points_examined;
    }
    d << "; ";
  }
  return {pass, d.str()};
}

std::string file_bytes(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome harness_determinism() {
  const auto dir = std::filesystem::temp_directory_path() / "knnkit_acceptance";
  std::filesystem::create_directories(dir);
  std::vector<std::string> failures;

  for (const GenMode mode : {GenMode::uniform, GenMode::blobs}) {
    GenSpec spec;
    spec.mode = mode;
    spec.n = 5000;
    spec.dim = 3;
    spec.seed = 31337;
    write_points(generate(spec), dir / "gen_a.csv");
    write_points(generate(spec), dir / "gen_b.csv");
    if (file_bytes(dir / "gen_a.csv") != file_bytes(dir / "gen_b.csv")) {
      failures.push_back(std::string(to_string(mode)) + " generation not byte-identical");
    }
    const Dataset back = read_points(dir / "gen_a.csv");
    write_points(back, dir / "gen_c.csv");
    if (!(back == generate(spec)) || file_bytes(dir / "gen_a.csv") != file_bytes(dir / "gen_c.csv")) {
      failures.push_back(std::string(to_string(mode)) + " round trip not lossless");
    }
  }

  GenSpec half;
  half.size_mb = 0.5;
  half.dim = 2;
  GenSpec one;
  one.size_mb = 1.0;
  one.dim = 3;
  const std::size_t n_half = generate(half).size();
  const std::size_t n_one = generate(one).size();
  if (n_half != 32768) failures.push_back("0.5 MB 2D gave " + std::to_string(n_half));
  if (n_one != 43690) failures.push_back("1 MB 3D gave " + std::to_string(n_one));

  if (!failures.empty()) return {false, failures.front()};
  return {true, "byte-identical regeneration, lossless round trip, n=32768 (0.5 MB 2D), n=43690 (1 MB 3D)"};
}

}  // namespace

int main() {
  const std::vector<Instance> instances = exact_instances();
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"exact-search oracle equivalence", [&] { return exact_oracle_equivalence(instances); }},
      {"epsilon-approximation bound", epsilon_bound},
      {"epsilon=0 exactness", [&] { return epsilon_zero_exactness(instances); }},
      {"tree structural invariants", tree_invariants},
      {"clustering oracle equivalence", clustering_equivalence},
      {"pruning effectiveness", pruning_effectiveness},
      {"instrumented monotonicity", visit_monotonicity},
      {"harness determinism and format", harness_determinism},
  };

  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Outcome outcome;
    try {
      outcome = run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] %s: %s\n", outcome.pass ? "PASS" : "FAIL", name.c_str(), outcome.detail.c_str());
    std::fflush(stdout);
    if (!outcome.pass) ++failures;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
