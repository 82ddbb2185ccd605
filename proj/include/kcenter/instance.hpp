#ifndef KCENTER_INSTANCE_HPP
#define KCENTER_INSTANCE_HPP

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "kcenter/metric.hpp"
#include "kcenter/random.hpp"

namespace kcenter {

struct Ball {
    std::vector<double> center;
    double radius = 0.0;
};

/// Badoiu-Clarkson iteration: start at point 0, step 1/(i+1) toward the farthest point.
Ball meb_approx(const PointSet& ps, std::size_t iterations = 100);

struct InjectedInstance {
    PointSet points;
    std::vector<Index> injected;
};

/**
 * Appends ceil(fraction * n) points drawn uniformly from the ball of radius
 * scale * r_meb around the approximate MEB center.
 */
InjectedInstance inject_outliers(const PointSet& ps, double fraction, double scale, Rng& rng);

/// A point drawn uniformly from the d-dimensional ball of the given radius.
std::vector<double> uniform_in_ball(std::size_t dim, double radius, Rng& rng);

/**
 * Planted instance: k_true clusters in a dim-dimensional flat embedded in
 * R^D (extra coordinates zero). Each cluster holds its center point, the
 * 2 * dim axis points at distance exactly `radius`, and uniform points in
 * the ball. Cluster centers are at least `separation * radius` apart;
 * outliers are uniform in `outlier_scale` times the inliers' MEB, at least
 * 3 * radius from every cluster center. With every cluster larger than the
 * outlier count this makes the planted radius optimal for (k_true, outliers).
 */
struct GeneratorSpec {
    std::size_t n_inliers = 1000;
    std::size_t k_true = 3;
    std::size_t ambient_dim = 2;
    std::size_t intrinsic_dim = 2;
    double radius = 1.0;
    std::size_t outliers = 10;
    double outlier_scale = 1.1;
    double separation = 10.0;

    void validate() const;
    std::size_t n() const { return n_inliers + outliers; }
};

/// "n=300,k=3,D=2,dim=2,radius=1,outliers=15,scale=1.1,sep=10"; n counts inliers plus outliers.
GeneratorSpec parse_generator_spec(const std::string& text);

inline constexpr std::size_t no_cluster = std::numeric_limits<std::size_t>::max();

struct PlantedInstance {
    PointSet points;
    /// Cluster id per point, no_cluster for outliers.
    std::vector<std::size_t> label;
    std::vector<Index> outliers;
    std::vector<Index> cluster_centers;
    /// Largest distance from a cluster's center point to its members.
    double r_opt = 0.0;
};

PlantedInstance generate(const GeneratorSpec& spec, std::uint64_t seed);

std::uint64_t hash_points(const PointSet& ps);

}  // namespace kcenter

#endif  // KCENTER_INSTANCE_HPP
