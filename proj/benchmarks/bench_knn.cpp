// Micro benchmarks for the query engines and tree construction.
// Dataset sizes follow the 0.5 MB / 1 MB, 2D / 3D grid.

#include <benchmark/benchmark.h>

#include <map>
#include <tuple>

#include "knnkit/bench.hpp"
#include "knnkit/bruteforce.hpp"
#include "knnkit/clustering.hpp"
#include "knnkit/generate.hpp"
#include "knnkit/kdtree.hpp"

namespace {

using namespace knnkit;

const Dataset& dataset(double size_mb, std::size_t dim) {
  static std::map<std::pair<double, std::size_t>, Dataset> cache;
  auto it = cache.find({size_mb, dim});
  if (it == cache.end()) {
    GenSpec spec;
    spec.size_mb = size_mb;
    spec.dim = dim;
    spec.seed = 1;
    it = cache.emplace(std::pair(size_mb, dim), generate(spec)).first;
  }
  return it->second;
}

const Dataset& queries(std::size_t dim) {
  static std::map<std::size_t, Dataset> cache;
  auto it = cache.find(dim);
  if (it == cache.end()) {
    GenSpec spec;
    spec.n = 1024;
    spec.dim = dim;
    spec.seed = query_seed_for(1);
    it = cache.emplace(dim, generate(spec)).first;
  }
  return it->second;
}

double size_of(const benchmark::State& state) { return static_cast<double>(state.range(0)) / 2.0; }

void BM_Build(benchmark::State& state) {
  const Dataset& pts = dataset(size_of(state), static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(build_kdtree(pts, kDefaultBucketSize));
  state.counters["n"] = static_cast<double>(pts.size());
}

void BM_Brute(benchmark::State& state) {
  const std::size_t dim = static_cast<std::size_t>(state.range(1));
  const Dataset& pts = dataset(size_of(state), dim);
  const Dataset& qs = queries(dim);
  const auto k = static_cast<std::size_t>(state.range(2));
  std::size_t q = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(brute_knn(pts, qs[q], k));
    q = (q + 1) % qs.size();
  }
}

template <SearchOrder Order>
void BM_Tree(benchmark::State& state) {
  const std::size_t dim = static_cast<std::size_t>(state.range(1));
  const Dataset& pts = dataset(size_of(state), dim);
  const Dataset& qs = queries(dim);
  static std::map<std::pair<double, std::size_t>, KdTree> trees;
  auto it = trees.find({size_of(state), dim});
  if (it == trees.end()) it = trees.emplace(std::pair(size_of(state), dim), build_kdtree(pts)).first;
  const SearchParams params{static_cast<std::size_t>(state.range(2)), static_cast<double>(state.range(3)) / 10.0,
                            Order};
  SearchStats stats;
  std::size_t q = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(approx_knn_search(it->second, qs[q], params, &stats));
    q = (q + 1) % qs.size();
  }
  state.counters["leaf_pts"] =
      benchmark::Counter(static_cast<double>(stats.leaf_points_examined), benchmark::Counter::kAvgIterations);
}

void BM_Cluster(benchmark::State& state) {
  GenSpec spec;
  spec.mode = GenMode::blobs;
  spec.n = static_cast<std::size_t>(state.range(0));
  spec.blob_count = 8;
  spec.sigma = 0.02;
  const Dataset pts = generate(spec);
  ClusterParams params;
  params.k = 4;
  params.dist_threshold = 0.05;
  for (auto _ : state) benchmark::DoNotOptimize(cluster(pts, params));
}

// range(0) is size in half-megabytes.
void Grid(benchmark::internal::Benchmark* b) {
  for (int half_mb : {1, 2})
    for (int dim : {2, 3}) b->Args({half_mb, dim});
}

void QueryGrid(benchmark::internal::Benchmark* b) {
  for (int half_mb : {1, 2})
    for (int dim : {2, 3})
      for (int k = 1; k <= 5; ++k) b->Args({half_mb, dim, k});
}

void ApproxGrid(benchmark::internal::Benchmark* b) {
  for (int half_mb : {1, 2})
    for (int dim : {2, 3})
      for (int k : {1, 5})
        for (int eps_tenths : {0, 5, 10}) b->Args({half_mb, dim, k, eps_tenths});
}

}  // namespace

BENCHMARK(BM_Build)->Apply(Grid)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Brute)->Apply(QueryGrid)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Tree<SearchOrder::standard>)->Apply(ApproxGrid)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Tree<SearchOrder::priority>)->Apply(ApproxGrid)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Cluster)->Arg(2000)->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
