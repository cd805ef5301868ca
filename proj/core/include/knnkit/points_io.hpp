#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "knnkit/dataset.hpp"

namespace knnkit {

/// Shortest decimal string that parses back to exactly `value`.
std::string format_double(double value);

/// Parses one point per line of comma-separated decimals. Lines starting
/// with '#' and blank lines are ignored; the first data line fixes the
/// dimension. Throws ParseError naming `source` and the 1-based line.
Dataset parse_points(std::istream& in, const std::string& source = "<stream>");
void format_points(const Dataset& points, std::ostream& out);

Dataset read_points(const std::filesystem::path& path);
/// Throws IoError if the file cannot be written.
void write_points(const Dataset& points, const std::filesystem::path& path);

}  // namespace knnkit
