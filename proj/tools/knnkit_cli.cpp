// knnkit command-line front end: gen, bench, query, cluster, stats.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "knnkit/knnkit.hpp"

namespace {

using namespace knnkit;

struct GenOptions {
  std::string mode = "uniform";
  std::optional<std::size_t> n;
  std::optional<double> size_mb;
  std::size_t dim = 2;
  std::uint64_t seed = 1;
  std::string centers;
  double sigma = 0.05;
  std::size_t blob_count = 3;
};

void add_gen_flags(CLI::App& cmd, GenOptions& opt) {
  cmd.add_option("--mode", opt.mode, "uniform or blobs")->check(CLI::IsMember({"uniform", "blobs"}));
  auto* n = cmd.add_option("--n", opt.n, "point count");
  cmd.add_option("--size-mb", opt.size_mb, "dataset size in MB (8-byte coordinates)")->excludes(n);
  cmd.add_option("--dim", opt.dim, "dimension")->check(CLI::PositiveNumber);
  cmd.add_option("--seed", opt.seed, "generator seed");
  cmd.add_option("--centers", opt.centers, "blob centers separated by ; or /, e.g. 0,0/100,0");
  cmd.add_option("--sigma", opt.sigma, "blob standard deviation");
  cmd.add_option("--blobs", opt.blob_count, "number of random blob centers when --centers is absent");
}

GenSpec to_gen_spec(const GenOptions& opt) {
  GenSpec spec;
  spec.mode = opt.mode == "blobs" ? GenMode::blobs : GenMode::uniform;
  spec.n = opt.n;
  spec.size_mb = opt.size_mb;
  if (!spec.n && !spec.size_mb) spec.n = 1000;
  spec.dim = opt.dim;
  spec.seed = opt.seed;
  spec.sigma = opt.sigma;
  spec.blob_count = opt.blob_count;
  std::string separated = opt.centers;
  std::replace(separated.begin(), separated.end(), '/', ';');
  std::stringstream centers(separated);
  std::string center;
  while (std::getline(centers, center, ';')) {
    if (center.empty()) continue;
    std::istringstream one(center);
    spec.centers.push_back(Point(parse_points(one, "--centers")[0]));
  }
  return spec;
}

// Writes to `path`, or stdout when it is empty or "-".
template <typename Fn>
void with_output(const std::string& path, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(path, "cannot open for writing");
  fn(out);
  if (!out) throw IoError(path, "write failed");
}

Linkage parse_linkage(const std::string& s) { return s == "mutual" ? Linkage::mutual : Linkage::unilateral; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"knnkit: k-d tree and brute-force k-nearest-neighbour toolkit"};
  app.require_subcommand(1);

  GenOptions gen_opt;
  std::string out_path;

  auto* gen = app.add_subcommand("gen", "generate a points file");
  add_gen_flags(*gen, gen_opt);
  gen->add_option("--out", out_path, "output points file (default stdout)");

  BenchConfig bench_cfg;
  std::vector<std::string> engine_names{"brute", "kdtree-standard", "kdtree-priority"};
  auto* bench = app.add_subcommand("bench", "time k-d tree engines against brute force");
  add_gen_flags(*bench, gen_opt);
  bench->add_option("--k", bench_cfg.k_values, "k values, e.g. 1,2,3,4,5")->delimiter(',');
  bench->add_option("--epsilon", bench_cfg.epsilon, "approximation slack")->check(CLI::NonNegativeNumber);
  bench->add_option("--bucket-size", bench_cfg.bucket_size, "maximum leaf size")->check(CLI::PositiveNumber);
  bench->add_option("--engine", engine_names, "brute, kdtree-standard, kdtree-priority")->delimiter(',');
  bench->add_option("--queries", bench_cfg.query_count, "queries per cell")->check(CLI::PositiveNumber);
  bench->add_option("--reps", bench_cfg.repetitions, "repetitions; best query time kept")->check(CLI::PositiveNumber);
  std::string bench_out = "bench.csv";
  bench->add_option("--out", bench_out, "report CSV path; JSON sidecar written alongside");

  std::string points_path;
  std::string queries_path;
  std::size_t k = 1;
  double epsilon = 0.0;
  std::size_t bucket_size = kDefaultBucketSize;
  std::string engine_name = "kdtree-standard";

  auto* query = app.add_subcommand("query", "k nearest neighbours of each query point");
  query->add_option("points", points_path, "reference points file")->required();
  query->add_option("queries", queries_path, "query points file")->required();
  query->add_option("--k", k, "neighbour count")->check(CLI::PositiveNumber);
  query->add_option("--epsilon", epsilon, "approximation slack")->check(CLI::NonNegativeNumber);
  query->add_option("--engine", engine_name, "brute, kdtree-standard, kdtree-priority");
  query->add_option("--bucket-size", bucket_size, "maximum leaf size")->check(CLI::PositiveNumber);
  query->add_option("--out", out_path, "output CSV (default stdout)");

  double threshold = std::numeric_limits<double>::infinity();
  std::string linkage = "unilateral";
  auto* clus = app.add_subcommand("cluster", "approximate-kNN-graph clustering");
  clus->add_option("points", points_path, "points file")->required();
  clus->add_option("--k", k, "neighbours per point")->check(CLI::PositiveNumber);
  clus->add_option("--epsilon", epsilon, "approximation slack")->check(CLI::NonNegativeNumber);
  clus->add_option("--threshold", threshold, "maximum edge length (default unbounded)")->check(CLI::PositiveNumber);
  clus->add_option("--linkage", linkage, "unilateral or mutual")->check(CLI::IsMember({"unilateral", "mutual"}));
  clus->add_option("--out", out_path, "output label CSV (default stdout)");

  auto* stats = app.add_subcommand("stats", "k-d tree structure statistics");
  stats->add_option("points", points_path, "points file")->required();
  stats->add_option("--bucket-size", bucket_size, "maximum leaf size")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (gen->parsed()) {
      const Dataset points = generate(to_gen_spec(gen_opt));
      with_output(out_path, [&](std::ostream& out) { format_points(points, out); });
    } else if (bench->parsed()) {
      bench_cfg.gen = to_gen_spec(gen_opt);
      bench_cfg.engines.clear();
      for (const auto& name : engine_names) bench_cfg.engines.push_back(parse_engine(name));
      const BenchReport report = run_benchmark(bench_cfg);
      write_report(report, bench_out);
      std::cout << "engine,k,total_query_seconds,mean_query_seconds,leaf_points_examined,checksum\n";
      for (const BenchCell& c : report.cells) {
        std::cout << to_string(c.engine) << ',' << c.k << ',' << c.total_query_seconds << ','
                  << c.mean_query_seconds << ',' << c.leaf_points_examined << ',' << c.checksum << '\n';
      }
      std::cerr << "wrote " << bench_out << " and " << sidecar_path(bench_out).string() << '\n';
    } else if (query->parsed()) {
      const Dataset refs = read_points(points_path);
      const Dataset queries = read_points(queries_path);
      const Engine engine = parse_engine(engine_name);
      std::vector<std::vector<Neighbor>> rows;
      if (engine == Engine::brute) {
        if (epsilon != 0.0) throw InvalidParameter("the brute engine is exact; --epsilon must be 0");
        rows = brute_knn_batch(refs, queries, k);
      } else {
        const KdTree tree = build_kdtree(refs, bucket_size);
        const SearchParams params{
            k, epsilon, engine == Engine::kdtree_priority ? SearchOrder::priority : SearchOrder::standard};
        for (std::size_t q = 0; q < queries.size(); ++q) rows.push_back(approx_knn_search(tree, queries[q], params));
      }
      with_output(out_path, [&](std::ostream& out) {
        out << "query_index,rank,point_index,distance\n";
        for (std::size_t q = 0; q < rows.size(); ++q) {
          for (std::size_t r = 0; r < rows[q].size(); ++r) {
            out << q << ',' << r + 1 << ',' << rows[q][r].index << ',' << format_double(std::sqrt(rows[q][r].dist2))
                << '\n';
          }
        }
      });
    } else if (clus->parsed()) {
      const Dataset points = read_points(points_path);
      ClusterParams params;
      params.k = k;
      params.epsilon = epsilon;
      params.dist_threshold = threshold;
      params.linkage = parse_linkage(linkage);
      const ClusterLabeling labels = cluster(points, params);
      with_output(out_path, [&](std::ostream& out) {
        out << "point_index,label\n";
        for (std::size_t i = 0; i < labels.labels.size(); ++i) out << i << ',' << labels.labels[i] << '\n';
      });
      std::cerr << labels.cluster_count << " clusters\n";
    } else if (stats->parsed()) {
      const KdTree tree = build_kdtree(read_points(points_path), bucket_size);
      const TreeStats s = tree_stats(tree);
      std::cout << "n=" << tree.size() << "\nd=" << tree.dim() << "\nnode_count=" << s.node_count
                << "\nleaf_count=" << s.leaf_count << "\ndepth=" << s.depth << "\nbucket_size=" << s.bucket_size
                << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
