#ifndef KCENTER_METRIC_HPP
#define KCENTER_METRIC_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace kcenter {

using Index = std::size_t;

/// Invalid parameters or inputs supplied by the caller.
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A resource guard tripped (enumeration budget, size cap).
class GuardError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {
inline thread_local std::uint64_t distance_evaluations = 0;
}

/**
 * Counts distance evaluations made on the calling thread while it is alive.
 * Every call to `PointSet::dist` and `PointSet::dist_to` is counted.
 */
class DistanceCounter {
public:
    DistanceCounter() : start_(detail::distance_evaluations) {}
    std::uint64_t count() const { return detail::distance_evaluations - start_; }
    void reset() { start_ = detail::distance_evaluations; }

private:
    std::uint64_t start_;
};

enum class MetricMode { euclidean, matrix };

/**
 * Immutable dataset. Either an n x D coordinate matrix (row-major) with the
 * Euclidean distance, or an n x n precomputed distance matrix.
 */
class PointSet {
public:
    static PointSet euclidean(std::vector<double> coords, std::size_t dim);
    static PointSet from_rows(const std::vector<std::vector<double>>& rows);
    static PointSet distance_matrix(std::vector<double> dmat, std::size_t n);

    MetricMode mode() const { return mode_; }
    std::size_t size() const { return n_; }
    /// Coordinate dimension; 0 in matrix mode.
    std::size_t dim() const { return dim_; }

    double dist(Index i, Index j) const {
        if (i >= n_ || j >= n_) {
            throw ArgumentError("point index out of range");
        }
        ++detail::distance_evaluations;
        if (mode_ == MetricMode::matrix) {
            return data_[i * n_ + j];
        }
        const double* a = data_.data() + i * dim_;
        const double* b = data_.data() + j * dim_;
        double acc = 0;
        for (std::size_t d = 0; d < dim_; ++d) {
            double delta = a[d] - b[d];
            acc += delta * delta;
        }
        return std::sqrt(acc);
    }

    /// Distance from point i to an arbitrary location (euclidean mode only).
    double dist_to(Index i, std::span<const double> location) const;

    std::span<const double> row(Index i) const;
    std::span<const double> raw() const { return data_; }

    /// Copy of the points at `indices`, relabelled 0..indices.size()-1.
    PointSet subset(std::span<const Index> indices) const;

    /// O(n^3) triangle-inequality check for matrix mode; always true in euclidean mode.
    bool satisfies_triangle_inequality(double tolerance = 0.0) const;

private:
    PointSet(MetricMode mode, std::vector<double> data, std::size_t n, std::size_t dim)
        : mode_(mode), data_(std::move(data)), n_(n), dim_(dim) {}

    MetricMode mode_;
    std::vector<double> data_;
    std::size_t n_;
    std::size_t dim_;
};

/// Problem parameters shared by every algorithm.
struct ParamSet {
    std::size_t n = 0;
    std::size_t k = 1;
    std::size_t z = 0;
    double eps = 1.0;
    double eta = 0.25;
    double mu = 0.5;
    double gamma = 0.0;
    std::uint64_t seed = 0;

    /// Validates and derives gamma = z / n. Requires k + z <= n.
    static ParamSet make(std::size_t n, std::size_t k, std::size_t z, double eps = 1.0,
                         double eta = 0.25, double mu = 0.5, std::uint64_t seed = 0);

    ParamSet with_eps(double new_eps) const;
    ParamSet with_z(std::size_t new_z) const;
};

/// Ordered centers plus the greedy round that added each one.
struct CenterSet {
    std::vector<Index> indices;
    std::vector<std::size_t> round_of;

    std::size_t size() const { return indices.size(); }
    bool empty() const { return indices.empty(); }
    void add(Index index, std::size_t round) {
        indices.push_back(index);
        round_of.push_back(round);
    }
};

/// Smallest integer >= x, absorbing floating noise below 1e-9 (e.g. 1.1 * 10).
std::size_t ceil_count(double x);

/// Number of points excluded by the relaxed cost: ceil((1 + eps) * z).
std::size_t exclusion_count(std::size_t z, double eps);

/// 64-bit FNV-1a over raw bytes; stable across platforms with the same endianness.
std::uint64_t fnv1a(std::span<const unsigned char> bytes, std::uint64_t seed = 0xcbf29ce484222325ULL);
std::uint64_t hash_doubles(std::span<const double> values);
std::uint64_t hash_indices(std::span<const Index> values);

}  // namespace kcenter

#endif  // KCENTER_METRIC_HPP
