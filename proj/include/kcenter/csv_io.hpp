#ifndef KCENTER_CSV_IO_HPP
#define KCENTER_CSV_IO_HPP

#include <iosfwd>
#include <string>

#include "kcenter/metric.hpp"

namespace kcenter {

/// One point per line, comma-separated decimals, no header, uniform column count.
PointSet read_points_csv(std::istream& in);
PointSet load_points_csv(const std::string& path);

/// Square, symmetric, zero-diagonal distance matrix in the same CSV format.
PointSet read_distance_matrix_csv(std::istream& in);
PointSet load_distance_matrix_csv(const std::string& path);

void write_points_csv(std::ostream& out, const PointSet& ps);

}  // namespace kcenter

#endif  // KCENTER_CSV_IO_HPP
