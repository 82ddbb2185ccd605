#include "kcenter/coreset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "kcenter/greedy.hpp"
#include "kcenter/hosts.hpp"

namespace kcenter {

std::string to_string(CoresetAlgorithm algorithm) {
    switch (algorithm) {
        case CoresetAlgorithm::alg4: return "alg4";
        case CoresetAlgorithm::alg5: return "alg5";
        case CoresetAlgorithm::uniform: return "uniform";
        case CoresetAlgorithm::distributed: return "distributed";
        case CoresetAlgorithm::identity: return "identity";
    }
    return "identity";
}

CoresetAlgorithm coreset_algorithm_from_string(const std::string& name) {
    for (auto a : {CoresetAlgorithm::alg4, CoresetAlgorithm::alg5, CoresetAlgorithm::uniform,
                   CoresetAlgorithm::distributed, CoresetAlgorithm::identity}) {
        if (to_string(a) == name) {
            return a;
        }
    }
    throw ArgumentError("unknown coreset algorithm '" + name + "'");
}

std::uint64_t WeightedCoreset::total_weight() const {
    return kcenter::total_weight(entries);
}

std::vector<Index> WeightedCoreset::indices() const {
    std::vector<Index> out;
    out.reserve(entries.size());
    for (const auto& e : entries) {
        out.push_back(e.index);
    }
    return out;
}

std::span<const WeightedPoint> WeightedCoreset::center_entries() const {
    return std::span<const WeightedPoint>(entries).first(std::min(meta.centers, entries.size()));
}

std::span<const WeightedPoint> WeightedCoreset::far_points() const {
    return std::span<const WeightedPoint>(entries).subspan(std::min(meta.centers, entries.size()));
}

namespace {

CoresetMeta base_meta(CoresetAlgorithm algorithm, const ParamSet& params) {
    CoresetMeta meta;
    meta.algorithm = algorithm;
    meta.k = params.k;
    meta.z = params.z;
    meta.eps = 1.0;
    meta.eta = params.eta;
    meta.mu = params.mu;
    return meta;
}

/// Absorbs every point within `radius` into its nearest center; keeps the rest at weight 1.
WeightedCoreset absorb(const NearestTracker& tracker, double radius, bool keep_assignment) {
    const std::size_t n = tracker.size();
    auto mindist = tracker.mindist();
    auto owner = tracker.owner();
    std::vector<std::uint64_t> weight(n, 0);
    std::vector<Index> far;
    WeightedCoreset cs;
    cs.source_n = n;
    if (keep_assignment) {
        cs.absorbed_by.resize(n);
    }
    for (Index p = 0; p < n; ++p) {
        if (mindist[p] <= radius) {
            ++weight[owner[p]];
            if (keep_assignment) {
                cs.absorbed_by[p] = owner[p];
            }
        } else {
            far.push_back(p);
            if (keep_assignment) {
                cs.absorbed_by[p] = p;
            }
        }
    }
    // A center sharing its location with an earlier center absorbs nothing and is dropped.
    for (Index c : tracker.centers()) {
        if (weight[c] > 0) {
            cs.entries.push_back({c, weight[c]});
        }
    }
    cs.meta.centers = cs.entries.size();
    for (Index p : far) {
        cs.entries.push_back({p, 1});
    }
    cs.meta.far_count = far.size();
    cs.meta.r_tilde = radius;
    return cs;
}

void run_greedy_rounds(GreedyRun& run, const GreedyConfig& cfg, std::size_t window, Rng& rng) {
    run.initial_sample(cfg.init_sample, rng);
    for (std::size_t j = 2; j <= cfg.t; ++j) {
        if (!run.round(window, cfg.per_round_sample, rng)) {
            break;
        }
    }
}

}  // namespace

WeightedCoreset identity_coreset(const PointSet& ps, const ParamSet& params, bool keep_assignment) {
    WeightedCoreset cs;
    cs.source_n = ps.size();
    cs.meta = base_meta(CoresetAlgorithm::identity, params);
    cs.meta.fallback = true;
    for (Index p = 0; p < ps.size(); ++p) {
        cs.entries.push_back({p, 1});
    }
    cs.meta.centers = ps.size();
    if (keep_assignment) {
        cs.absorbed_by.resize(ps.size());
        std::iota(cs.absorbed_by.begin(), cs.absorbed_by.end(), Index{0});
    }
    return cs;
}

WeightedCoreset coreset_known_rho(const PointSet& ps, const ParamSet& params, double rho, Rng& rng,
                                  const CoresetOptions& opts) {
    if (params.n != ps.size()) {
        throw ArgumentError("parameters were built for a different n");
    }
    if (!(rho > 0.0) || !std::isfinite(rho)) {
        throw ArgumentError("rho must be positive");
    }
    const std::size_t n = ps.size();
    const ParamSet p = params.with_eps(opts.eps);
    const double c = greedy_constant(p.k, p.eta);
    const std::size_t l = ceil_count(std::pow(2.0 / p.mu, rho) * static_cast<double>(p.k));
    const double rounds = c * static_cast<double>(l) / (1.0 - p.eta);

    auto fallback = [&] {
        auto cs = identity_coreset(ps, params, opts.keep_assignment);
        cs.meta.eps = opts.eps;
        cs.meta.rho = rho;
        return cs;
    };
    if (rounds > static_cast<double>(n) || exclusion_count(p.z, p.eps) >= n) {
        return fallback();
    }
    auto cfg = make_greedy_config(p, ceil_count(rounds));
    GreedyRun run(ps);
    run_greedy_rounds(run, cfg, outlier_window(p.z, p.eps, n), rng);
    const double r_tilde = phi_eps(run.tracker(), p.z, p.eps).radius;

    auto cs = absorb(run.tracker(), r_tilde, opts.keep_assignment);
    const auto centers = cs.meta.centers;
    const auto far = cs.meta.far_count;
    cs.meta = base_meta(CoresetAlgorithm::alg4, params);
    cs.meta.eps = opts.eps;
    cs.meta.rho = rho;
    cs.meta.r_tilde = r_tilde;
    cs.meta.r_phase1 = r_tilde;
    cs.meta.centers = centers;
    cs.meta.far_count = far;
    cs.meta.rounds = run.rounds_done();
    return cs;
}

WeightedCoreset coreset_unknown_rho(const PointSet& ps, const ParamSet& params, Rng& rng,
                                    const CoresetOptions& opts) {
    if (params.n != ps.size()) {
        throw ArgumentError("parameters were built for a different n");
    }
    const std::size_t n = ps.size();
    const ParamSet p = params.with_eps(1.0);
    const std::size_t far_budget = exclusion_count(p.z, 5.0);
    if (far_budget >= n) {
        return identity_coreset(ps, params, opts.keep_assignment);
    }
    auto cfg = make_greedy_config(p);
    GreedyRun run(ps);
    run_greedy_rounds(run, cfg, outlier_window(p.z, 1.0, n), rng);
    const double r_phase1 = phi_eps(run.tracker(), p.z, 1.0).radius;

    double r_prime = 0.0;
    bool cap_hit = false;
    if (r_phase1 > 0.0) {
        const std::size_t window = outlier_window(3 * p.z, 1.0, n);
        const std::size_t cap = opts.max_rounds.value_or(n);
        const double target = p.mu / 2.0 * r_phase1;
        std::size_t extra = 0;
        r_prime = phi_eps(run.tracker(), p.z, 5.0).radius;
        while (r_prime > target) {
            if (extra == cap) {
                cap_hit = true;
                break;
            }
            run.round(window, cfg.per_round_sample, rng);
            ++extra;
            r_prime = phi_eps(run.tracker(), p.z, 5.0).radius;
        }
    }
    if (cap_hit) {
        auto cs = identity_coreset(ps, params, opts.keep_assignment);
        cs.meta.cap_hit = true;
        cs.meta.rounds = run.rounds_done();
        cs.meta.r_phase1 = r_phase1;
        return cs;
    }

    auto cs = absorb(run.tracker(), r_prime, opts.keep_assignment);
    const auto centers = cs.meta.centers;
    const auto far = cs.meta.far_count;
    cs.meta = base_meta(CoresetAlgorithm::alg5, params);
    cs.meta.r_tilde = r_prime;
    cs.meta.r_phase1 = r_phase1;
    cs.meta.centers = centers;
    cs.meta.far_count = far;
    cs.meta.rounds = run.rounds_done();
    return cs;
}

std::vector<WeightedPoint> UniformSample::as_weighted() const {
    std::vector<WeightedPoint> out;
    out.reserve(indices.size());
    for (Index i : indices) {
        out.push_back({i, 1});
    }
    return out;
}

std::size_t default_uniform_sample_size(const ParamSet& params, std::size_t dim) {
    if (params.z == 0) {
        throw ArgumentError("no outliers: use plain k-center sampling");
    }
    const double eps = params.eps;
    const double kd = static_cast<double>(params.k) * static_cast<double>(std::max<std::size_t>(1, dim));
    const double size =
        40.0 / (eps * eps * params.gamma) * kd * std::log(kd / (eps * params.gamma * params.eta));
    if (!std::isfinite(size) || size >= static_cast<double>(params.n)) {
        return params.n;
    }
    return std::max<std::size_t>(1, ceil_count(size));
}

UniformSample uniform_sample(const PointSet& ps, const ParamSet& params, std::optional<std::size_t> size_override,
                             Rng& rng) {
    if (params.n != ps.size()) {
        throw ArgumentError("parameters were built for a different n");
    }
    if (params.z == 0) {
        throw ArgumentError("no outliers: use plain k-center sampling");
    }
    const std::size_t n = ps.size();
    const std::size_t size = size_override ? *size_override : default_uniform_sample_size(params, ps.dim());
    if (size == 0 || size > n) {
        throw ArgumentError("sample size must lie in [1, n]");
    }
    // Partial Fisher-Yates: the first `size` slots form the sample.
    std::vector<Index> pool(n);
    std::iota(pool.begin(), pool.end(), Index{0});
    for (std::size_t i = 0; i < size; ++i) {
        std::size_t j = i + uniform_index(rng, n - i);
        std::swap(pool[i], pool[j]);
    }
    UniformSample out;
    out.indices.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(size));
    out.z_prime = ceil_count((1.0 + params.eps) * params.gamma * static_cast<double>(size));
    if (out.z_prime >= size) {
        throw ArgumentError("adjusted outlier budget swallows the sample; increase the sample size");
    }
    return out;
}

Host charikar_host() {
    return [](const PointSet& ps, std::span<const WeightedPoint> points, std::size_t k, std::uint64_t z) {
        return charikar_3approx(ps, points, k, z);
    };
}

Host brute_force_host() {
    return [](const PointSet& ps, std::span<const WeightedPoint> points, std::size_t k, std::uint64_t z) {
        return brute_force_weighted(ps, points, k, z).opt_centers;
    };
}

ComposedSolution compose_with_host(const WeightedCoreset& cs, const PointSet& ps, const ParamSet& params,
                                   const Host& host) {
    if (cs.source_n != ps.size()) {
        throw ArgumentError("coreset was built for a different point set");
    }
    ComposedSolution out;
    out.centers = host(ps, cs.entries, params.k, params.z);
    out.eval = phi_eps(ps, out.centers, params.z, 0.0);
    return out;
}

std::uint64_t hash_coreset(const WeightedCoreset& cs) {
    std::vector<Index> ints;
    ints.push_back(cs.source_n);
    for (const auto& e : cs.entries) {
        ints.push_back(e.index);
        ints.push_back(static_cast<Index>(e.weight));
    }
    const auto& m = cs.meta;
    ints.insert(ints.end(), {static_cast<Index>(m.algorithm), m.k, m.z, m.centers, m.far_count, m.rounds,
                             static_cast<Index>(m.fallback), static_cast<Index>(m.cap_hit)});
    ints.insert(ints.end(), cs.absorbed_by.begin(), cs.absorbed_by.end());
    std::vector<double> reals{m.r_tilde, m.r_phase1, m.eps, m.eta, m.mu, m.rho};
    std::uint64_t h = hash_indices(ints);
    return h ^ (hash_doubles(reals) * 0x9e3779b97f4a7c15ULL);
}

}  // namespace kcenter
