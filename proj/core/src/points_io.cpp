#include "knnkit/points_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <vector>

#include "knnkit/error.hpp"

namespace knnkit {

std::string format_double(double value) {
  char buf[32];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, result.ptr);
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

Dataset parse_points(std::istream& in, const std::string& source) {
  std::vector<double> coords;
  std::size_t dim = 0;
  std::size_t line_no = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = trim(line);
    if (text.empty() || text.front() == '#') continue;

    std::size_t fields = 0;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = text.find(',', start);
      const std::string_view field =
          trim(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
      double value = 0.0;
      const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
      if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
        throw ParseError(source, line_no, "field " + std::to_string(fields + 1) + " is not a number: '" +
                                              std::string(field) + "'");
      }
      if (!std::isfinite(value)) throw ParseError(source, line_no, "non-finite coordinate");
      coords.push_back(value);
      ++fields;
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (dim == 0) {
      dim = fields;
    } else if (fields != dim) {
      throw ParseError(source, line_no,
                       "expected " + std::to_string(dim) + " coordinates, found " + std::to_string(fields));
    }
  }
  if (dim == 0) throw ParseError(source, std::max<std::size_t>(line_no, 1), "no points found");
  return Dataset(dim, std::move(coords));
}

void format_points(const Dataset& points, std::ostream& out) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    const PointView p = points[i];
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (j) out << ',';
      out << format_double(p[j]);
    }
    out << '\n';
  }
}

Dataset read_points(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path.string(), "cannot open for reading");
  return parse_points(in, path.string());
}

void write_points(const Dataset& points, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(path.string(), "cannot open for writing");
  format_points(points, out);
  out.flush();
  if (!out) throw IoError(path.string(), "write failed");
}

}  // namespace knnkit
