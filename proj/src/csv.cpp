#include "chemolab/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "chemolab/errors.hpp"

namespace chemolab::csv {

std::string format(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string format_optional(const std::optional<double>& v) {
    return v.has_value() ? format(*v) : std::string();
}

double parse(const std::string& cell) {
    if (cell.empty()) throw ConfigError("csv: empty cell where a number was expected");
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(cell, &pos);
    } catch (const std::exception&) {
        throw ConfigError("csv: not a number: '" + cell + "'");
    }
    if (pos != cell.size()) throw ConfigError("csv: trailing characters in numeric cell '" + cell + "'");
    return v;
}

std::optional<double> parse_optional(const std::string& cell) {
    if (cell.empty()) return std::nullopt;
    return parse(cell);
}

std::string join(const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ',';
        out += cells[i];
    }
    return out;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open for writing: " + path);
    f << content;
    if (!f) throw Error("write failed: " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open for reading: " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

}  // namespace chemolab::csv
