#ifndef KCENTER_COST_HPP
#define KCENTER_COST_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "kcenter/metric.hpp"
#include "kcenter/nearest.hpp"

namespace kcenter {

/**
 * Result of evaluating a center set with an exclusion budget.
 *
 * `assignment[p]` is the nearest center of p (a point index) for every
 * point, excluded or not; `excluded` lists the dropped points in ascending
 * index order.
 */
struct ClusteringEval {
    double radius = 0.0;
    std::vector<Index> excluded;
    std::vector<Index> assignment;
};

/**
 * Relaxed clustering cost: drops the ceil((1 + eps) * z) points farthest
 * from their nearest center (ties drop the lower index first) and returns
 * the largest remaining nearest-center distance. eps = 0 gives the plain
 * k-center-with-outliers cost.
 */
ClusteringEval phi_eps(const PointSet& ps, std::span<const Index> centers, std::size_t z, double eps);
ClusteringEval phi_eps(const PointSet& ps, const CenterSet& centers, std::size_t z, double eps);

/// Same cost from an already populated tracker (no distance evaluations).
ClusteringEval phi_eps(const NearestTracker& tracker, std::size_t z, double eps);

/// A point of a weighted multiset: `weight` unit copies located at `index`.
struct WeightedPoint {
    Index index = 0;
    std::uint64_t weight = 0;

    friend bool operator==(const WeightedPoint&, const WeightedPoint&) = default;
};

std::uint64_t total_weight(std::span<const WeightedPoint> points);

/**
 * Weighted k-center cost with exactly z units of outlier weight. Each
 * weighted point counts as `weight` unit copies; units are peeled from the
 * farthest distances until z are gone (a point may be partially removed).
 * Throws when total weight <= z.
 */
double weighted_phi0(std::span<const WeightedPoint> points, const PointSet& ps,
                     std::span<const Index> centers, std::uint64_t z);

}  // namespace kcenter

#endif  // KCENTER_COST_HPP
