#include "kcenter/cost.hpp"

#include <algorithm>
#include <limits>
#include <utility>

namespace kcenter {

ClusteringEval phi_eps(const NearestTracker& tracker, std::size_t z, double eps) {
    if (tracker.centers().empty()) {
        throw ArgumentError("center set must be non-empty");
    }
    const std::size_t n = tracker.size();
    const std::size_t m = exclusion_count(z, eps);
    if (m >= n) {
        throw ArgumentError("exclusion budget swallows dataset");
    }
    auto mindist = tracker.mindist();
    ClusteringEval out;
    out.excluded = farthest_m(mindist, m);
    out.assignment.assign(tracker.owner().begin(), tracker.owner().end());

    std::vector<char> dropped(n, 0);
    for (Index p : out.excluded) {
        dropped[p] = 1;
    }
    double radius = 0.0;
    for (Index p = 0; p < n; ++p) {
        if (!dropped[p]) {
            radius = std::max(radius, mindist[p]);
        }
    }
    out.radius = radius;
    return out;
}

ClusteringEval phi_eps(const PointSet& ps, std::span<const Index> centers, std::size_t z, double eps) {
    if (centers.empty()) {
        throw ArgumentError("center set must be non-empty");
    }
    NearestTracker tracker(ps);
    for (Index c : centers) {
        tracker.add_center(c);
    }
    return phi_eps(tracker, z, eps);
}

ClusteringEval phi_eps(const PointSet& ps, const CenterSet& centers, std::size_t z, double eps) {
    return phi_eps(ps, std::span<const Index>(centers.indices), z, eps);
}

std::uint64_t total_weight(std::span<const WeightedPoint> points) {
    std::uint64_t sum = 0;
    for (const auto& wp : points) {
        sum += wp.weight;
    }
    return sum;
}

double weighted_phi0(std::span<const WeightedPoint> points, const PointSet& ps,
                     std::span<const Index> centers, std::uint64_t z) {
    if (centers.empty()) {
        throw ArgumentError("center set must be non-empty");
    }
    if (total_weight(points) <= z) {
        throw ArgumentError("total weight must exceed the outlier budget");
    }
    std::vector<std::pair<double, std::uint64_t>> by_distance;
    by_distance.reserve(points.size());
    for (const auto& wp : points) {
        if (wp.weight == 0) {
            continue;
        }
        double best = std::numeric_limits<double>::infinity();
        for (Index c : centers) {
            best = std::min(best, ps.dist(wp.index, c));
        }
        by_distance.emplace_back(best, wp.weight);
    }
    std::sort(by_distance.begin(), by_distance.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });

    std::uint64_t to_remove = z;
    for (const auto& [d, w] : by_distance) {
        if (w > to_remove) {
            return d;
        }
        to_remove -= w;
    }
    return 0.0;  // unreachable: total weight > z
}

}  // namespace kcenter
