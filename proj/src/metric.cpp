#include "kcenter/metric.hpp"

#include <algorithm>

namespace kcenter {

PointSet PointSet::euclidean(std::vector<double> coords, std::size_t dim) {
    if (dim == 0) {
        throw ArgumentError("dimension must be at least 1");
    }
    if (coords.empty() || coords.size() % dim != 0) {
        throw ArgumentError("coordinate buffer is empty or not a multiple of the dimension");
    }
    for (double v : coords) {
        if (!std::isfinite(v)) {
            throw ArgumentError("coordinates must be finite");
        }
    }
    std::size_t n = coords.size() / dim;
    return PointSet(MetricMode::euclidean, std::move(coords), n, dim);
}

PointSet PointSet::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) {
        throw ArgumentError("point set must contain at least one point");
    }
    std::size_t dim = rows.front().size();
    std::vector<double> coords;
    coords.reserve(rows.size() * dim);
    for (const auto& r : rows) {
        if (r.size() != dim) {
            throw ArgumentError("rows have inconsistent column counts");
        }
        coords.insert(coords.end(), r.begin(), r.end());
    }
    return euclidean(std::move(coords), dim);
}

PointSet PointSet::distance_matrix(std::vector<double> dmat, std::size_t n) {
    if (n == 0 || dmat.size() != n * n) {
        throw ArgumentError("distance matrix must be square and non-empty");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (dmat[i * n + i] != 0.0) {
            throw ArgumentError("distance matrix diagonal must be zero");
        }
        for (std::size_t j = 0; j < n; ++j) {
            double v = dmat[i * n + j];
            if (!std::isfinite(v) || v < 0.0) {
                throw ArgumentError("distances must be finite and nonnegative");
            }
            if (v != dmat[j * n + i]) {
                throw ArgumentError("distance matrix must be symmetric");
            }
        }
    }
    return PointSet(MetricMode::matrix, std::move(dmat), n, 0);
}

double PointSet::dist_to(Index i, std::span<const double> location) const {
    if (mode_ != MetricMode::euclidean) {
        throw ArgumentError("distance to a free location needs euclidean mode");
    }
    if (i >= n_ || location.size() != dim_) {
        throw ArgumentError("bad index or location dimension");
    }
    ++detail::distance_evaluations;
    const double* a = data_.data() + i * dim_;
    double acc = 0;
    for (std::size_t d = 0; d < dim_; ++d) {
        double delta = a[d] - location[d];
        acc += delta * delta;
    }
    return std::sqrt(acc);
}

std::span<const double> PointSet::row(Index i) const {
    if (mode_ != MetricMode::euclidean) {
        throw ArgumentError("rows exist only in euclidean mode");
    }
    if (i >= n_) {
        throw ArgumentError("point index out of range");
    }
    return std::span<const double>(data_).subspan(i * dim_, dim_);
}

PointSet PointSet::subset(std::span<const Index> indices) const {
    if (indices.empty()) {
        throw ArgumentError("subset must be non-empty");
    }
    for (Index i : indices) {
        if (i >= n_) {
            throw ArgumentError("subset index out of range");
        }
    }
    std::size_t m = indices.size();
    if (mode_ == MetricMode::euclidean) {
        std::vector<double> coords;
        coords.reserve(m * dim_);
        for (Index i : indices) {
            auto r = row(i);
            coords.insert(coords.end(), r.begin(), r.end());
        }
        return PointSet(MetricMode::euclidean, std::move(coords), m, dim_);
    }
    std::vector<double> dmat(m * m);
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < m; ++b) {
            dmat[a * m + b] = data_[indices[a] * n_ + indices[b]];
        }
    }
    return PointSet(MetricMode::matrix, std::move(dmat), m, 0);
}

bool PointSet::satisfies_triangle_inequality(double tolerance) const {
    if (mode_ == MetricMode::euclidean) {
        return true;
    }
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) {
            double direct = data_[i * n_ + j];
            for (std::size_t l = 0; l < n_; ++l) {
                if (direct > data_[i * n_ + l] + data_[l * n_ + j] + tolerance) {
                    return false;
                }
            }
        }
    }
    return true;
}

ParamSet ParamSet::make(std::size_t n, std::size_t k, std::size_t z, double eps, double eta,
                        double mu, std::uint64_t seed) {
    if (n == 0) {
        throw ArgumentError("n must be at least 1");
    }
    if (k == 0) {
        throw ArgumentError("k must be at least 1");
    }
    if (z >= n) {
        throw ArgumentError("outlier budget z must be smaller than n");
    }
    if (k + z > n) {
        throw ArgumentError("degenerate instance: k + z exceeds n");
    }
    if (!(eps > 0.0) || !std::isfinite(eps)) {
        throw ArgumentError("eps must be positive");
    }
    if (!(eta > 0.0 && eta < 0.5)) {
        throw ArgumentError("eta must lie in (0, 1/2)");
    }
    if (!(mu > 0.0 && mu < 1.0)) {
        throw ArgumentError("mu must lie in (0, 1)");
    }
    ParamSet p;
    p.n = n;
    p.k = k;
    p.z = z;
    p.eps = eps;
    p.eta = eta;
    p.mu = mu;
    p.gamma = static_cast<double>(z) / static_cast<double>(n);
    p.seed = seed;
    return p;
}

ParamSet ParamSet::with_eps(double new_eps) const {
    return make(n, k, z, new_eps, eta, mu, seed);
}

ParamSet ParamSet::with_z(std::size_t new_z) const {
    return make(n, k, new_z, eps, eta, mu, seed);
}

std::size_t ceil_count(double x) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
        throw ArgumentError("count must be finite and nonnegative");
    }
    double c = std::ceil(x - 1e-9 * std::max(1.0, x));
    return static_cast<std::size_t>(std::max(0.0, c));
}

std::size_t exclusion_count(std::size_t z, double eps) {
    if (!(eps >= 0.0)) {
        throw ArgumentError("eps must be nonnegative");
    }
    return ceil_count((1.0 + eps) * static_cast<double>(z));
}

std::uint64_t fnv1a(std::span<const unsigned char> bytes, std::uint64_t seed) {
    std::uint64_t h = seed;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t hash_doubles(std::span<const double> values) {
    auto bytes = std::as_bytes(values);
    return fnv1a({reinterpret_cast<const unsigned char*>(bytes.data()), bytes.size()});
}

std::uint64_t hash_indices(std::span<const Index> values) {
    std::vector<std::uint64_t> wide(values.begin(), values.end());
    return fnv1a(std::span<const unsigned char>(reinterpret_cast<const unsigned char*>(wide.data()),
                                                wide.size() * sizeof(std::uint64_t)));
}

}  // namespace kcenter
