#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "knnkit/bench.hpp"
#include "knnkit/error.hpp"
#include "knnkit/points_io.hpp"

namespace knnkit {

namespace {

using nlohmann::json;

constexpr const char* kCsvHeader =
    "engine,k,epsilon,n,d,bucket_size,build_seconds,total_query_seconds,mean_query_seconds,"
    "leaf_points_examined,checksum";

template <typename T>
T parse_number(const std::string& field, const std::string& path, std::size_t line) {
  T value{};
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
    throw ParseError(path, line, "bad numeric field '" + field + "'");
  }
  return value;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

json gen_to_json(const GenSpec& gen) {
  json j;
  j["mode"] = to_string(gen.mode);
  j["n"] = gen.n ? json(*gen.n) : json(nullptr);
  j["size_mb"] = gen.size_mb ? json(*gen.size_mb) : json(nullptr);
  j["dim"] = gen.dim;
  j["seed"] = gen.seed;
  j["bounds"] = gen.bounds;
  json centers = json::array();
  for (const Point& c : gen.centers) centers.push_back(c.coords());
  j["centers"] = centers;
  j["blob_count"] = gen.blob_count;
  j["sigma"] = gen.sigma;
  return j;
}

GenSpec gen_from_json(const json& j) {
  GenSpec gen;
  gen.mode = j.at("mode").get<std::string>() == "blobs" ? GenMode::blobs : GenMode::uniform;
  if (!j.at("n").is_null()) gen.n = j.at("n").get<std::size_t>();
  if (!j.at("size_mb").is_null()) gen.size_mb = j.at("size_mb").get<double>();
  gen.dim = j.at("dim").get<std::size_t>();
  gen.seed = j.at("seed").get<std::uint64_t>();
  gen.bounds = j.at("bounds").get<std::vector<std::pair<double, double>>>();
  for (const auto& c : j.at("centers")) gen.centers.emplace_back(c.get<std::vector<double>>());
  gen.blob_count = j.at("blob_count").get<std::size_t>();
  gen.sigma = j.at("sigma").get<double>();
  return gen;
}

}  // namespace

std::filesystem::path sidecar_path(const std::filesystem::path& csv_path) {
  std::filesystem::path sidecar = csv_path;
  sidecar.replace_extension(".json");
  if (sidecar == csv_path) sidecar += ".meta.json";
  return sidecar;
}

void write_report(const BenchReport& report, const std::filesystem::path& csv_path) {
  {
    std::ofstream out(csv_path, std::ios::binary);
    if (!out) throw IoError(csv_path.string(), "cannot open for writing");
    out << kCsvHeader << '\n';
    for (const BenchCell& c : report.cells) {
      out << to_string(c.engine) << ',' << c.k << ',' << format_double(c.epsilon) << ',' << c.n << ',' << c.d
          << ',' << c.bucket_size << ',' << format_double(c.build_seconds) << ','
          << format_double(c.total_query_seconds) << ',' << format_double(c.mean_query_seconds) << ','
          << c.leaf_points_examined << ',' << c.checksum << '\n';
    }
    out.flush();
    if (!out) throw IoError(csv_path.string(), "write failed");
  }

  const BenchConfig& cfg = report.config;
  json engines = json::array();
  for (const Engine e : cfg.engines) engines.push_back(to_string(e));
  json doc;
  doc["config"] = {{"gen", gen_to_json(cfg.gen)},
                   {"k_values", cfg.k_values},
                   {"epsilon", cfg.epsilon},
                   {"bucket_size", cfg.bucket_size},
                   {"query_count", cfg.query_count},
                   {"engines", engines},
                   {"repetitions", cfg.repetitions}};
  const BenchMetadata& m = report.metadata;
  doc["metadata"] = {{"timestamp", m.timestamp},         {"machine", m.machine},
                     {"rng", m.rng},                     {"size_conversion", m.size_conversion},
                     {"brute_strategy", m.brute_strategy}, {"query_seed", m.query_seed}};

  const auto sidecar = sidecar_path(csv_path);
  std::ofstream out(sidecar, std::ios::binary);
  if (!out) throw IoError(sidecar.string(), "cannot open for writing");
  out << doc.dump(2) << '\n';
  out.flush();
  if (!out) throw IoError(sidecar.string(), "write failed");
}

BenchReport read_report(const std::filesystem::path& csv_path) {
  BenchReport report;
  const std::string path = csv_path.string();
  std::ifstream in(csv_path);
  if (!in) throw IoError(path, "cannot open for reading");
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line) || line != kCsvHeader) throw ParseError(path, 1, "missing report header");
  ++line_no;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != 11) throw ParseError(path, line_no, "expected 11 fields, found " + std::to_string(f.size()));
    BenchCell c;
    try {
      c.engine = parse_engine(f[0]);
    } catch (const InvalidParameter& e) {
      throw ParseError(path, line_no, e.what());
    }
    c.k = parse_number<std::size_t>(f[1], path, line_no);
    c.epsilon = parse_number<double>(f[2], path, line_no);
    c.n = parse_number<std::size_t>(f[3], path, line_no);
    c.d = parse_number<std::size_t>(f[4], path, line_no);
    c.bucket_size = parse_number<std::size_t>(f[5], path, line_no);
    c.build_seconds = parse_number<double>(f[6], path, line_no);
    c.total_query_seconds = parse_number<double>(f[7], path, line_no);
    c.mean_query_seconds = parse_number<double>(f[8], path, line_no);
    c.leaf_points_examined = parse_number<std::uint64_t>(f[9], path, line_no);
    c.checksum = f[10];
    report.cells.push_back(std::move(c));
  }

  const auto sidecar = sidecar_path(csv_path);
  std::ifstream meta_in(sidecar);
  if (!meta_in) throw IoError(sidecar.string(), "cannot open for reading");
  try {
    const json doc = json::parse(meta_in);
    const json& cfg = doc.at("config");
    report.config.gen = gen_from_json(cfg.at("gen"));
    report.config.k_values = cfg.at("k_values").get<std::vector<std::size_t>>();
    report.config.epsilon = cfg.at("epsilon").get<double>();
    report.config.bucket_size = cfg.at("bucket_size").get<std::size_t>();
    report.config.query_count = cfg.at("query_count").get<std::size_t>();
    report.config.engines.clear();
    for (const auto& e : cfg.at("engines")) report.config.engines.push_back(parse_engine(e.get<std::string>()));
    report.config.repetitions = cfg.at("repetitions").get<std::size_t>();
    const json& m = doc.at("metadata");
    report.metadata.timestamp = m.at("timestamp").get<std::string>();
    report.metadata.machine = m.at("machine").get<std::string>();
    report.metadata.rng = m.at("rng").get<std::string>();
    report.metadata.size_conversion = m.at("size_conversion").get<std::string>();
    report.metadata.brute_strategy = m.at("brute_strategy").get<std::string>();
    report.metadata.query_seed = m.at("query_seed").get<std::uint64_t>();
  } catch (const json::exception& e) {
    throw ParseError(sidecar.string(), 0, e.what());
  } catch (const InvalidParameter& e) {
    throw ParseError(sidecar.string(), 0, e.what());
  }
  return report;
}

}  // namespace knnkit
