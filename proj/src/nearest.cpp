#include "kcenter/nearest.hpp"

#include <algorithm>
#include <numeric>

namespace kcenter {

NearestTracker::NearestTracker(const PointSet& ps)
    : ps_(&ps),
      mindist_(ps.size(), std::numeric_limits<double>::infinity()),
      owner_(ps.size(), no_center) {}

void NearestTracker::add_center(Index c) {
    if (c >= mindist_.size()) {
        throw ArgumentError("center index out of range");
    }
    centers_.push_back(c);
    for (Index p = 0; p < mindist_.size(); ++p) {
        double d = ps_->dist(p, c);
        if (d < mindist_[p]) {
            mindist_[p] = d;
            owner_[p] = c;
        }
    }
}

double NearestTracker::max_distance() const {
    if (mindist_.empty()) {
        return 0.0;
    }
    return *std::max_element(mindist_.begin(), mindist_.end());
}

std::vector<Index> farthest_m(std::span<const double> distances, std::size_t m) {
    const std::size_t n = distances.size();
    if (m > n) {
        throw ArgumentError("cannot select more points than exist");
    }
    std::vector<Index> order(n);
    std::iota(order.begin(), order.end(), Index{0});
    if (m < n) {
        auto before = [&](Index a, Index b) {
            return distances[a] > distances[b] || (distances[a] == distances[b] && a < b);
        };
        std::nth_element(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(m), order.end(),
                         before);
        order.resize(m);
    }
    std::sort(order.begin(), order.end());
    return order;
}

std::vector<Index> farthest_m(const NearestTracker& tracker, std::size_t m) {
    return farthest_m(tracker.mindist(), m);
}

double radius_excluding(std::span<const double> distances, std::size_t m) {
    if (m >= distances.size()) {
        return 0.0;
    }
    std::vector<double> copy(distances.begin(), distances.end());
    auto nth = copy.begin() + static_cast<std::ptrdiff_t>(m);
    std::nth_element(copy.begin(), nth, copy.end(), std::greater<>());
    return *nth;
}

}  // namespace kcenter
