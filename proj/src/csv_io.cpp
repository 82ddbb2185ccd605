#include "kcenter/csv_io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <vector>

namespace kcenter {
namespace {

std::vector<std::vector<double>> read_rows(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.find_first_not_of(" \t") == std::string::npos) {
            continue;
        }
        std::vector<double> row;
        std::stringstream fields(line);
        std::string field;
        while (std::getline(fields, field, ',')) {
            const char* begin = field.c_str();
            char* end = nullptr;
            errno = 0;
            double v = std::strtod(begin, &end);
            while (end && (*end == ' ' || *end == '\t')) {
                ++end;
            }
            if (end == begin || (end && *end != '\0') || errno == ERANGE) {
                throw ArgumentError("line " + std::to_string(line_no) + ": malformed number '" + field + "'");
            }
            if (!std::isfinite(v)) {
                throw ArgumentError("line " + std::to_string(line_no) + ": NaN or Inf is not allowed");
            }
            row.push_back(v);
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw ArgumentError("line " + std::to_string(line_no) + ": inconsistent column count");
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        throw ArgumentError("input contains no points");
    }
    return rows;
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ArgumentError("cannot open '" + path + "'");
    }
    return in;
}

}  // namespace

PointSet read_points_csv(std::istream& in) {
    return PointSet::from_rows(read_rows(in));
}

PointSet load_points_csv(const std::string& path) {
    auto in = open_or_throw(path);
    return read_points_csv(in);
}

PointSet read_distance_matrix_csv(std::istream& in) {
    auto rows = read_rows(in);
    std::size_t n = rows.size();
    if (rows.front().size() != n) {
        throw ArgumentError("distance matrix must be square");
    }
    std::vector<double> flat;
    flat.reserve(n * n);
    for (auto& r : rows) {
        flat.insert(flat.end(), r.begin(), r.end());
    }
    return PointSet::distance_matrix(std::move(flat), n);
}

PointSet load_distance_matrix_csv(const std::string& path) {
    auto in = open_or_throw(path);
    return read_distance_matrix_csv(in);
}

void write_points_csv(std::ostream& out, const PointSet& ps) {
    if (ps.mode() != MetricMode::euclidean) {
        throw ArgumentError("only euclidean point sets have coordinates to write");
    }
    out << std::setprecision(17);
    for (Index i = 0; i < ps.size(); ++i) {
        auto r = ps.row(i);
        for (std::size_t d = 0; d < r.size(); ++d) {
            out << (d ? "," : "") << r[d];
        }
        out << '\n';
    }
}

}  // namespace kcenter
