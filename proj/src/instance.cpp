#include "kcenter/instance.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

namespace kcenter {

namespace {

double euclid(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t d = 0; d < a.size(); ++d) {
        double diff = a[d] - b[d];
        acc += diff * diff;
    }
    return std::sqrt(acc);
}

void require_euclidean(const PointSet& ps) {
    if (ps.mode() != MetricMode::euclidean) {
        throw ArgumentError("operation needs coordinates; distance-matrix input is unsupported");
    }
}

}  // namespace

Ball meb_approx(const PointSet& ps, std::size_t iterations) {
    require_euclidean(ps);
    const std::size_t n = ps.size();
    auto first = ps.row(0);
    Ball ball;
    ball.center.assign(first.begin(), first.end());
    auto farthest = [&] {
        Index best = 0;
        double best_d = -1.0;
        for (Index p = 0; p < n; ++p) {
            double d = euclid(ps.row(p), ball.center);
            if (d > best_d) {
                best_d = d;
                best = p;
            }
        }
        return std::pair{best, best_d};
    };
    for (std::size_t i = 1; i <= iterations; ++i) {
        auto f = ps.row(farthest().first);
        const double step = 1.0 / static_cast<double>(i + 1);
        for (std::size_t d = 0; d < ball.center.size(); ++d) {
            ball.center[d] += (f[d] - ball.center[d]) * step;
        }
    }
    ball.radius = farthest().second;
    return ball;
}

std::vector<double> uniform_in_ball(std::size_t dim, double radius, Rng& rng) {
    std::vector<double> v(dim);
    double norm = 0.0;
    do {
        norm = 0.0;
        for (auto& x : v) {
            x = standard_normal(rng);
            norm += x * x;
        }
        norm = std::sqrt(norm);
    } while (norm == 0.0);
    const double r = radius * std::pow(uniform01(rng), 1.0 / static_cast<double>(dim));
    for (auto& x : v) {
        x = x / norm * r;
    }
    return v;
}

InjectedInstance inject_outliers(const PointSet& ps, double fraction, double scale, Rng& rng) {
    require_euclidean(ps);
    if (!(fraction > 0.0 && fraction < 1.0)) {
        throw ArgumentError("outlier fraction must lie in (0, 1)");
    }
    if (!(scale >= 0.0) || !std::isfinite(scale)) {
        throw ArgumentError("outlier scale must be non-negative");
    }
    const std::size_t n = ps.size();
    const std::size_t dim = ps.dim();
    const std::size_t count = std::max<std::size_t>(1, ceil_count(fraction * static_cast<double>(n)));
    const Ball ball = meb_approx(ps);
    std::vector<double> coords(ps.raw().begin(), ps.raw().end());
    InjectedInstance out{PointSet::euclidean({0.0}, 1), {}};
    for (std::size_t i = 0; i < count; ++i) {
        auto offset = uniform_in_ball(dim, scale * ball.radius, rng);
        for (std::size_t d = 0; d < dim; ++d) {
            coords.push_back(ball.center[d] + offset[d]);
        }
        out.injected.push_back(n + i);
    }
    out.points = PointSet::euclidean(std::move(coords), dim);
    return out;
}

void GeneratorSpec::validate() const {
    if (k_true == 0) {
        throw ArgumentError("generator needs at least one cluster");
    }
    if (ambient_dim == 0 || intrinsic_dim == 0 || intrinsic_dim > ambient_dim) {
        throw ArgumentError("generator needs 1 <= dim <= D");
    }
    if (!(radius > 0.0) || !std::isfinite(radius)) {
        throw ArgumentError("cluster radius must be positive");
    }
    if (outliers >= n_inliers) {
        throw ArgumentError("outlier count must be below the inlier count");
    }
    if (!(outlier_scale >= 0.0) || !(separation >= 4.0)) {
        throw ArgumentError("outlier scale must be non-negative and separation at least 4");
    }
    const std::size_t smallest = n_inliers / k_true;
    if (smallest < 1 + 2 * intrinsic_dim) {
        throw ArgumentError("clusters too small to hold their center and axis points");
    }
    if (smallest <= outliers) {
        throw ArgumentError("every cluster must hold more points than the outlier count");
    }
}

GeneratorSpec parse_generator_spec(const std::string& text) {
    GeneratorSpec spec;
    std::optional<std::size_t> total;
    std::stringstream in(text);
    std::string item;
    auto to_count = [](const std::string& key, const std::string& v) {
        std::size_t used = 0;
        unsigned long long x = 0;
        try {
            x = std::stoull(v, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != v.size() || v.empty() || v.front() == '-') {
            throw ArgumentError("generator key '" + key + "' needs a non-negative integer");
        }
        return static_cast<std::size_t>(x);
    };
    auto to_real = [](const std::string& key, const std::string& v) {
        std::size_t used = 0;
        double x = 0.0;
        try {
            x = std::stod(v, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != v.size() || v.empty() || !std::isfinite(x)) {
            throw ArgumentError("generator key '" + key + "' needs a number");
        }
        return x;
    };
    while (std::getline(in, item, ',')) {
        if (item.empty()) {
            continue;
        }
        auto eq = item.find('=');
        if (eq == std::string::npos) {
            throw ArgumentError("generator item '" + item + "' is not key=value");
        }
        std::string key = item.substr(0, eq);
        std::string value = item.substr(eq + 1);
        if (key == "n") {
            total = to_count(key, value);
        } else if (key == "inliers") {
            spec.n_inliers = to_count(key, value);
        } else if (key == "k") {
            spec.k_true = to_count(key, value);
        } else if (key == "D") {
            spec.ambient_dim = to_count(key, value);
        } else if (key == "dim") {
            spec.intrinsic_dim = to_count(key, value);
        } else if (key == "radius") {
            spec.radius = to_real(key, value);
        } else if (key == "outliers") {
            spec.outliers = to_count(key, value);
        } else if (key == "scale") {
            spec.outlier_scale = to_real(key, value);
        } else if (key == "sep") {
            spec.separation = to_real(key, value);
        } else {
            throw ArgumentError("unknown generator key '" + key + "'");
        }
    }
    if (total) {
        if (*total <= spec.outliers) {
            throw ArgumentError("generator n must exceed the outlier count");
        }
        spec.n_inliers = *total - spec.outliers;
    }
    spec.validate();
    return spec;
}

PlantedInstance generate(const GeneratorSpec& spec, std::uint64_t seed) {
    spec.validate();
    Rng rng(seed);
    const std::size_t D = spec.ambient_dim;
    const std::size_t dim = spec.intrinsic_dim;
    const double R = spec.radius;
    const double min_gap = spec.separation * R;

    // Cluster centers by rejection inside a cube that grows when crowded.
    // Only the first dim coordinates are used; the rest stay zero.
    double side =
        min_gap * (std::ceil(std::pow(static_cast<double>(spec.k_true), 1.0 / static_cast<double>(dim))) + 1.0);
    std::vector<std::vector<double>> centers;
    std::size_t failures = 0;
    while (centers.size() < spec.k_true) {
        std::vector<double> c(D, 0.0);
        for (std::size_t d = 0; d < dim; ++d) {
            c[d] = uniform01(rng) * side;
        }
        bool ok = std::all_of(centers.begin(), centers.end(),
                              [&](const std::vector<double>& o) { return euclid(c, o) >= min_gap; });
        if (ok) {
            centers.push_back(std::move(c));
        } else if (++failures % 1000 == 0) {
            side *= 1.5;
        }
    }

    std::vector<std::vector<double>> rows;
    std::vector<std::size_t> label;
    std::vector<char> is_center_point;
    for (std::size_t j = 0; j < spec.k_true; ++j) {
        const std::size_t size = spec.n_inliers / spec.k_true + (j < spec.n_inliers % spec.k_true ? 1 : 0);
        auto place = [&](const std::vector<double>& offset, bool center_point) {
            std::vector<double> p = centers[j];
            for (std::size_t d = 0; d < dim; ++d) {
                p[d] += offset[d];
            }
            rows.push_back(std::move(p));
            label.push_back(j);
            is_center_point.push_back(center_point ? 1 : 0);
        };
        place(std::vector<double>(dim, 0.0), true);
        for (std::size_t a = 0; a < dim; ++a) {
            for (double sign : {1.0, -1.0}) {
                std::vector<double> offset(dim, 0.0);
                offset[a] = sign * R;
                place(offset, false);
            }
        }
        for (std::size_t i = 1 + 2 * dim; i < size; ++i) {
            place(uniform_in_ball(dim, R, rng), false);
        }
    }

    if (spec.outliers > 0) {
        std::vector<double> flat;
        for (const auto& r : rows) {
            flat.insert(flat.end(), r.begin(), r.end());
        }
        const Ball ball = meb_approx(PointSet::euclidean(std::move(flat), D));
        double reach = spec.outlier_scale * ball.radius;
        std::size_t misses = 0;
        std::size_t placed = 0;
        while (placed < spec.outliers) {
            auto offset = uniform_in_ball(D, reach, rng);
            std::vector<double> p(D);
            for (std::size_t d = 0; d < D; ++d) {
                p[d] = ball.center[d] + offset[d];
            }
            bool far = std::all_of(centers.begin(), centers.end(),
                                   [&](const std::vector<double>& c) { return euclid(p, c) >= 3.0 * R; });
            if (far) {
                rows.push_back(std::move(p));
                label.push_back(no_cluster);
                is_center_point.push_back(0);
                ++placed;
            } else if (++misses % 1000 == 0) {
                reach = std::max(reach * 1.5, 4.0 * R);
            }
        }
    }

    // Shuffle so that index order carries no information about the plant.
    const std::size_t n = rows.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) {
        order[i] = i;
    }
    for (std::size_t i = n; i-- > 1;) {
        std::swap(order[i], order[uniform_index(rng, i + 1)]);
    }
    std::vector<double> coords;
    coords.reserve(n * D);
    PlantedInstance out{PointSet::euclidean({0.0}, 1), {}, {}, {}, 0.0};
    out.cluster_centers.assign(spec.k_true, 0);
    for (std::size_t pos = 0; pos < n; ++pos) {
        const std::size_t src = order[pos];
        coords.insert(coords.end(), rows[src].begin(), rows[src].end());
        out.label.push_back(label[src]);
        if (label[src] == no_cluster) {
            out.outliers.push_back(pos);
        } else if (is_center_point[src]) {
            out.cluster_centers[label[src]] = pos;
        }
    }
    out.points = PointSet::euclidean(std::move(coords), D);
    for (Index p = 0; p < n; ++p) {
        if (out.label[p] != no_cluster) {
            out.r_opt = std::max(out.r_opt, out.points.dist(p, out.cluster_centers[out.label[p]]));
        }
    }
    return out;
}

std::uint64_t hash_points(const PointSet& ps) {
    std::uint64_t h = hash_doubles(ps.raw());
    const std::vector<Index> shape{ps.size(), ps.dim(), static_cast<Index>(ps.mode())};
    return h ^ (hash_indices(shape) * 0x9e3779b97f4a7c15ULL);
}

}  // namespace kcenter
