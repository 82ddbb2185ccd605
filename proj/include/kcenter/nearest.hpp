#ifndef KCENTER_NEAREST_HPP
#define KCENTER_NEAREST_HPP

#include <limits>
#include <span>
#include <vector>

#include "kcenter/metric.hpp"

namespace kcenter {

inline constexpr Index no_center = std::numeric_limits<Index>::max();

/**
 * Nearest-center distances for every point of a PointSet, updated in O(n)
 * per inserted center. Before the first insertion every distance is +inf.
 * Ties keep the earlier center as owner.
 */
class NearestTracker {
public:
    explicit NearestTracker(const PointSet& ps);

    void add_center(Index c);

    std::span<const double> mindist() const { return mindist_; }
    std::span<const Index> owner() const { return owner_; }
    std::span<const Index> centers() const { return centers_; }
    const PointSet& points() const { return *ps_; }
    std::size_t size() const { return mindist_.size(); }
    double max_distance() const;

private:
    const PointSet* ps_;
    std::vector<double> mindist_;
    std::vector<Index> owner_;
    std::vector<Index> centers_;
};

/**
 * The m indices with the largest distances, in ascending index order.
 * Ordering is by distance descending, then index ascending, so ties at the
 * cut boundary keep the lower index. Expected O(n) via nth_element.
 */
std::vector<Index> farthest_m(std::span<const double> distances, std::size_t m);
std::vector<Index> farthest_m(const NearestTracker& tracker, std::size_t m);

/// Largest distance left after dropping the m largest; 0 when m >= size.
double radius_excluding(std::span<const double> distances, std::size_t m);

}  // namespace kcenter

#endif  // KCENTER_NEAREST_HPP
