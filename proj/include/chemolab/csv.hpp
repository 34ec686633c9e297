#pragma once

#include <optional>
#include <string>
#include <vector>

namespace chemolab::csv {

/// 17 significant digits: doubles survive a write/parse round trip exactly.
std::string format(double v);
std::string format_optional(const std::optional<double>& v);

double parse(const std::string& cell);
std::optional<double> parse_optional(const std::string& cell);

std::string join(const std::vector<std::string>& cells);
std::vector<std::string> split(const std::string& line);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace chemolab::csv
