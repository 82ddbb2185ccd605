#ifndef KCENTER_HOSTS_HPP
#define KCENTER_HOSTS_HPP

#include <cstdint>
#include <optional>
#include <span>

#include "kcenter/cost.hpp"
#include "kcenter/metric.hpp"
#include "kcenter/random.hpp"

namespace kcenter {

/// Farthest-first traversal (no outliers). Starts at `start`, or a uniform point.
CenterSet gonzalez(const PointSet& ps, std::size_t k, std::optional<Index> start, Rng& rng);

/**
 * Greedy disk-covering 3-approximation for weighted k-center with z units
 * of outlier weight. Candidate radii are the exact pairwise distances among
 * the weighted points; for a radius r it repeatedly picks the point whose
 * r-disk holds the most uncovered weight and clears its 3r-disk. Binary
 * search returns the centers of the smallest feasible candidate.
 * Centers are point indices of `ps` taken from `points`.
 */
CenterSet charikar_3approx(const PointSet& ps, std::span<const WeightedPoint> points, std::size_t k,
                           std::uint64_t z);

struct OracleResult {
    double r_opt = 0.0;
    CenterSet opt_centers;
    std::vector<Index> opt_excluded;
};

inline constexpr std::uint64_t brute_force_budget = 2'000'000;

/// Number of k-subsets of n items, saturating at UINT64_MAX.
std::uint64_t binomial(std::size_t n, std::size_t k);

/**
 * Exact optimum with centers restricted to input points: enumerates every
 * k-subset and keeps the smallest radius after dropping the z farthest
 * points. Ties resolve to the lexicographically smallest center set, for
 * any worker count. Throws GuardError when C(n, k) exceeds the budget.
 */
OracleResult brute_force_opt(const PointSet& ps, std::size_t k, std::size_t z, unsigned workers = 0);

/// Exact weighted optimum over k-subsets of `points` (centers drawn from the multiset).
OracleResult brute_force_weighted(const PointSet& ps, std::span<const WeightedPoint> points, std::size_t k,
                                  std::uint64_t z);

}  // namespace kcenter

#endif  // KCENTER_HOSTS_HPP
