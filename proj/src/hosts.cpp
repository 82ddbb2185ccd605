#include "kcenter/hosts.hpp"

#include <algorithm>
#include <limits>
#include <thread>

#include "kcenter/nearest.hpp"

namespace kcenter {

CenterSet gonzalez(const PointSet& ps, std::size_t k, std::optional<Index> start, Rng& rng) {
    const std::size_t n = ps.size();
    if (k == 0 || k > n) {
        throw ArgumentError("gonzalez needs 1 <= k <= n");
    }
    Index first = start ? *start : uniform_index(rng, n);
    if (first >= n) {
        throw ArgumentError("start index out of range");
    }
    NearestTracker tracker(ps);
    CenterSet out;
    out.add(first, 1);
    tracker.add_center(first);
    while (out.size() < k) {
        auto mindist = tracker.mindist();
        Index far = 0;
        for (Index p = 1; p < n; ++p) {
            if (mindist[p] > mindist[far]) {
                far = p;
            }
        }
        if (mindist[far] == 0.0) {
            break;
        }
        out.add(far, out.size() + 1);
        tracker.add_center(far);
    }
    return out;
}

namespace {

/// Dense pairwise distances among the weighted points.
std::vector<double> pairwise(const PointSet& ps, std::span<const WeightedPoint> points) {
    const std::size_t m = points.size();
    std::vector<double> d(m * m, 0.0);
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = a + 1; b < m; ++b) {
            double v = ps.dist(points[a].index, points[b].index);
            d[a * m + b] = v;
            d[b * m + a] = v;
        }
    }
    return d;
}

bool disk_cover(std::span<const double> d, std::span<const WeightedPoint> points, std::size_t k,
                std::uint64_t z, double r, std::vector<std::size_t>* picked) {
    const std::size_t m = points.size();
    std::vector<std::uint64_t> uncovered(m);
    std::uint64_t remaining = 0;
    for (std::size_t i = 0; i < m; ++i) {
        uncovered[i] = points[i].weight;
        remaining += points[i].weight;
    }
    if (picked) {
        picked->clear();
    }
    for (std::size_t round = 0; round < k && remaining > z; ++round) {
        std::size_t best = 0;
        std::uint64_t best_gain = 0;
        for (std::size_t p = 0; p < m; ++p) {
            std::uint64_t gain = 0;
            for (std::size_t q = 0; q < m; ++q) {
                if (uncovered[q] && d[p * m + q] <= r) {
                    gain += uncovered[q];
                }
            }
            if (gain > best_gain) {
                best_gain = gain;
                best = p;
            }
        }
        if (best_gain == 0) {
            break;
        }
        if (picked) {
            picked->push_back(best);
        }
        for (std::size_t q = 0; q < m; ++q) {
            if (uncovered[q] && d[best * m + q] <= 3.0 * r) {
                remaining -= uncovered[q];
                uncovered[q] = 0;
            }
        }
    }
    return remaining <= z;
}

}  // namespace

CenterSet charikar_3approx(const PointSet& ps, std::span<const WeightedPoint> points, std::size_t k,
                           std::uint64_t z) {
    if (k == 0) {
        throw ArgumentError("k must be at least 1");
    }
    if (total_weight(points) <= z) {
        throw ArgumentError("total weight must exceed the outlier budget");
    }
    const auto d = pairwise(ps, points);
    std::vector<double> candidates(d.begin(), d.end());
    candidates.push_back(0.0);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    std::size_t hi = candidates.size() - 1;
    if (!disk_cover(d, points, k, z, candidates[hi], nullptr)) {
        throw std::logic_error("disk cover infeasible at the largest candidate radius");
    }
    // Invariant: candidates[hi] feasible; everything below lo known infeasible.
    std::size_t lo = 0;
    while (lo < hi) {
        std::size_t mid = lo + (hi - lo) / 2;
        if (disk_cover(d, points, k, z, candidates[mid], nullptr)) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    std::vector<std::size_t> picked;
    disk_cover(d, points, k, z, candidates[hi], &picked);
    CenterSet out;
    for (std::size_t i = 0; i < picked.size(); ++i) {
        out.add(points[picked[i]].index, i + 1);
    }
    if (out.empty()) {
        // Only possible when z already absorbs everything but zero weight.
        out.add(points.front().index, 1);
    }
    return out;
}

std::uint64_t binomial(std::size_t n, std::size_t k) {
    if (k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    unsigned __int128 acc = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        acc = acc * (n - k + i) / i;
        if (acc > std::numeric_limits<std::uint64_t>::max()) {
            return std::numeric_limits<std::uint64_t>::max();
        }
    }
    return static_cast<std::uint64_t>(acc);
}

namespace {

/// Lexicographic k-combination of {0..n-1} with the given rank.
std::vector<std::size_t> unrank_combination(std::size_t n, std::size_t k, std::uint64_t rank) {
    std::vector<std::size_t> combo;
    combo.reserve(k);
    std::size_t next = 0;
    for (std::size_t slot = 0; slot < k; ++slot) {
        for (std::size_t v = next;; ++v) {
            std::uint64_t block = binomial(n - v - 1, k - slot - 1);
            if (rank < block) {
                combo.push_back(v);
                next = v + 1;
                break;
            }
            rank -= block;
        }
    }
    return combo;
}

bool next_combination(std::vector<std::size_t>& combo, std::size_t n) {
    const std::size_t k = combo.size();
    for (std::size_t i = k; i-- > 0;) {
        if (combo[i] < n - k + i) {
            ++combo[i];
            for (std::size_t j = i + 1; j < k; ++j) {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    return false;
}

struct Best {
    double radius = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> combo;

    void offer(double r, const std::vector<std::size_t>& c) {
        if (r < radius || (r == radius && (combo.empty() || c < combo))) {
            radius = r;
            combo = c;
        }
    }
};

/**
 * Scans `count` combinations starting at `first_rank`. `radius_of` maps a
 * combination to its cost.
 */
template <typename RadiusFn>
Best scan_range(std::size_t n, std::size_t k, std::uint64_t first_rank, std::uint64_t count, RadiusFn radius_of) {
    Best best;
    if (count == 0) {
        return best;
    }
    auto combo = unrank_combination(n, k, first_rank);
    for (std::uint64_t i = 0; i < count; ++i) {
        double r = radius_of(combo);
        if (r < best.radius) {
            best.radius = r;
            best.combo = combo;
        }
        if (i + 1 < count) {
            next_combination(combo, n);
        }
    }
    return best;
}

template <typename RadiusFn>
Best parallel_scan(std::size_t n, std::size_t k, unsigned workers, const RadiusFn& radius_of) {
    const std::uint64_t total = binomial(n, k);
    if (workers == 0) {
        workers = std::max(1u, std::thread::hardware_concurrency());
    }
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, total));
    std::vector<Best> partial(workers);
    std::vector<std::thread> pool;
    const std::uint64_t chunk = total / workers;
    const std::uint64_t extra = total % workers;
    std::uint64_t start = 0;
    for (unsigned w = 0; w < workers; ++w) {
        std::uint64_t count = chunk + (w < extra ? 1 : 0);
        if (workers == 1) {
            partial[w] = scan_range(n, k, start, count, radius_of);
        } else {
            pool.emplace_back([&, w, start, count] { partial[w] = scan_range(n, k, start, count, radius_of); });
        }
        start += count;
    }
    for (auto& t : pool) {
        t.join();
    }
    Best best;
    for (const auto& p : partial) {
        if (!p.combo.empty()) {
            best.offer(p.radius, p.combo);
        }
    }
    return best;
}

}  // namespace

OracleResult brute_force_opt(const PointSet& ps, std::size_t k, std::size_t z, unsigned workers) {
    const std::size_t n = ps.size();
    if (k == 0 || k > n) {
        throw ArgumentError("brute force needs 1 <= k <= n");
    }
    if (z >= n) {
        throw ArgumentError("outlier budget z must be smaller than n");
    }
    if (binomial(n, k) > brute_force_budget) {
        throw GuardError("C(n, k) exceeds the brute-force budget of 2e6 center sets; use a desk-scale instance");
    }
    std::vector<double> d(n * n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            d[i * n + j] = ps.dist(i, j);
        }
    }
    auto radius_of = [&](const std::vector<std::size_t>& combo) {
        std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
        for (std::size_t c : combo) {
            for (Index p = 0; p < n; ++p) {
                nearest[p] = std::min(nearest[p], d[p * n + c]);
            }
        }
        return radius_excluding(nearest, z);
    };
    Best best = parallel_scan(n, k, workers, radius_of);

    OracleResult out;
    for (std::size_t c : best.combo) {
        out.opt_centers.add(c, 1);
    }
    auto eval = phi_eps(ps, out.opt_centers, z, 0.0);
    out.r_opt = eval.radius;
    out.opt_excluded = std::move(eval.excluded);
    return out;
}

OracleResult brute_force_weighted(const PointSet& ps, std::span<const WeightedPoint> points, std::size_t k,
                                  std::uint64_t z) {
    const std::size_t m = points.size();
    if (k == 0 || m == 0) {
        throw ArgumentError("weighted brute force needs k >= 1 and a non-empty multiset");
    }
    if (total_weight(points) <= z) {
        throw ArgumentError("total weight must exceed the outlier budget");
    }
    k = std::min(k, m);
    if (binomial(m, k) > brute_force_budget) {
        throw GuardError("C(m, k) exceeds the brute-force budget of 2e6 center sets");
    }
    auto radius_of = [&](const std::vector<std::size_t>& combo) {
        std::vector<Index> centers;
        for (std::size_t c : combo) {
            centers.push_back(points[c].index);
        }
        return weighted_phi0(points, ps, centers, z);
    };
    Best best = parallel_scan(m, k, 1, radius_of);
    OracleResult out;
    out.r_opt = best.radius;
    for (std::size_t c : best.combo) {
        out.opt_centers.add(points[c].index, 1);
    }
    return out;
}

}  // namespace kcenter
