#include "kcenter/distributed.hpp"

#include <algorithm>
#include <limits>
#include <thread>

namespace kcenter {

ShardedInstance ShardedInstance::make(std::vector<std::vector<Index>> shards, std::size_t n) {
    if (shards.size() < 2) {
        throw ArgumentError("distributed instances need at least 2 sites");
    }
    std::vector<char> seen(n, 0);
    std::size_t covered = 0;
    for (const auto& shard : shards) {
        if (shard.empty()) {
            throw ArgumentError("every shard must be non-empty");
        }
        for (Index p : shard) {
            if (p >= n) {
                throw ArgumentError("shard index out of range");
            }
            if (seen[p]) {
                throw ArgumentError("shards must be disjoint");
            }
            seen[p] = 1;
            ++covered;
        }
    }
    if (covered != n) {
        throw ArgumentError("shards must cover every point");
    }
    ShardedInstance out;
    out.shards = std::move(shards);
    return out;
}

ShardedInstance ShardedInstance::random_balanced(std::size_t n, std::size_t sites, Rng& rng) {
    if (sites < 2 || sites > n) {
        throw ArgumentError("need 2 <= sites <= n");
    }
    std::vector<Index> perm(n);
    for (Index i = 0; i < n; ++i) {
        perm[i] = i;
    }
    for (std::size_t i = n; i-- > 1;) {
        std::swap(perm[i], perm[uniform_index(rng, i + 1)]);
    }
    std::vector<std::vector<Index>> shards(sites);
    for (std::size_t i = 0; i < n; ++i) {
        shards[i % sites].push_back(perm[i]);
    }
    for (auto& s : shards) {
        std::sort(s.begin(), s.end());
    }
    return make(std::move(shards), n);
}

ShardedInstance ShardedInstance::from_json(const nlohmann::json& j, std::size_t n) {
    if (!j.is_object()) {
        throw ArgumentError("shard spec must map site ids to index lists");
    }
    std::vector<std::vector<Index>> shards(j.size());
    for (const auto& [key, value] : j.items()) {
        std::size_t site = 0;
        try {
            std::size_t used = 0;
            site = std::stoul(key, &used);
            if (used != key.size()) {
                throw std::invalid_argument(key);
            }
        } catch (const std::exception&) {
            throw ArgumentError("shard spec key '" + key + "' is not a site id");
        }
        if (site >= shards.size()) {
            throw ArgumentError("site ids must be 0..s-1");
        }
        try {
            shards[site] = value.get<std::vector<Index>>();
        } catch (const nlohmann::json::exception&) {
            throw ArgumentError("site " + key + " must list point indices");
        }
    }
    return make(std::move(shards), n);
}

nlohmann::json ShardedInstance::to_json() const {
    nlohmann::json out = nlohmann::json::object();
    for (std::size_t i = 0; i < shards.size(); ++i) {
        out[std::to_string(i)] = shards[i];
    }
    return out;
}

std::vector<std::size_t> build_gamma(std::size_t z) {
    std::vector<std::size_t> gamma{0};
    for (std::size_t p = 2; p <= z; p *= 2) {
        gamma.push_back(p);
    }
    if (z > 0 && gamma.back() != z) {
        gamma.push_back(z);
    }
    return gamma;
}

StepFunction::StepFunction(std::vector<std::size_t> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
    if (xs_.empty() || xs_.size() != ys_.size()) {
        throw ArgumentError("step function needs matching, non-empty breakpoints");
    }
    for (std::size_t i = 1; i < xs_.size(); ++i) {
        if (xs_[i] <= xs_[i - 1]) {
            throw ArgumentError("breakpoints must be strictly ascending");
        }
    }
}

double StepFunction::operator()(std::size_t x) const {
    if (xs_.empty() || x < xs_.front()) {
        throw ArgumentError("query below the first breakpoint");
    }
    auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    return ys_[static_cast<std::size_t>(it - xs_.begin()) - 1];
}

bool StepFunction::non_increasing() const {
    for (std::size_t i = 1; i < ys_.size(); ++i) {
        if (ys_[i] > ys_[i - 1]) {
            return false;
        }
    }
    return true;
}

RepairResult monotone_repair(std::span<const double> radii) {
    RepairResult out;
    const std::size_t m = radii.size();
    out.radii.resize(m);
    out.source.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        if (i > 0 && out.radii[i - 1] < radii[i]) {
            out.radii[i] = out.radii[i - 1];
            out.source[i] = out.source[i - 1];
        } else {
            out.radii[i] = radii[i];
            out.source[i] = i;
        }
    }
    return out;
}

SiteProfile site_round1(const PointSet& shard, std::size_t site_id, const ParamSet& params,
                        const SiteOptions& opts, std::uint64_t site_seed, std::vector<std::string>* log) {
    const std::size_t n_i = shard.size();
    if (n_i == 0) {
        throw ArgumentError("shard must be non-empty");
    }
    SiteProfile profile;
    profile.site_id = site_id;
    profile.gamma = build_gamma(params.z);
    std::vector<WeightedCoreset> built;
    for (std::size_t slot = 0; slot < profile.gamma.size(); ++slot) {
        const std::size_t q = profile.gamma[slot];
        Rng rng(derive_seed(site_seed, q));
        WeightedCoreset cs;
        if (n_i <= params.k) {
            cs = identity_coreset(shard, ParamSet::make(n_i, n_i, 0, 1.0, params.eta, params.mu),
                                  opts.coreset.keep_assignment);
            cs.meta.k = params.k;
            cs.meta.z = q;
        } else {
            std::size_t q_eff = q;
            if (q_eff > n_i - params.k) {
                q_eff = n_i - params.k;
                if (log) {
                    log->push_back("site " + std::to_string(site_id) + ": q=" + std::to_string(q) +
                                   " clamped to " + std::to_string(q_eff));
                }
            }
            auto local = ParamSet::make(n_i, params.k, q_eff, 1.0, params.eta, params.mu, params.seed);
            cs = opts.algorithm == SiteAlgorithm::known_rho
                     ? coreset_known_rho(shard, local, opts.rho, rng, opts.coreset)
                     : coreset_unknown_rho(shard, local, rng, opts.coreset);
            if (cs.meta.cap_hit && log) {
                log->push_back("site " + std::to_string(site_id) + ": round cap hit at q=" + std::to_string(q));
            }
        }
        profile.raw_radii.push_back(cs.meta.r_tilde);
        built.push_back(std::move(cs));
    }
    auto repaired = monotone_repair(profile.raw_radii);
    profile.radii = repaired.radii;
    for (std::size_t slot = 0; slot < built.size(); ++slot) {
        std::size_t src = repaired.source[slot];
        profile.source_q.push_back(profile.gamma[src]);
        profile.coresets.push_back(built[src]);
        if (src != slot && log) {
            log->push_back("site " + std::to_string(site_id) + ": coreset for q=" +
                           std::to_string(profile.gamma[slot]) + " replaced by q=" +
                           std::to_string(profile.gamma[src]));
        }
    }
    return profile;
}

bool pair_precedes(double a, std::size_t i, double b, std::size_t j) {
    return a < b || (a == b && i < j);
}

Threshold coordinator_select(std::span<const StepFunction> h, std::size_t z) {
    const std::size_t s = h.size();
    if (s < 2) {
        throw ArgumentError("coordinator needs at least 2 sites");
    }
    if (2 * z + 1 > s * (z + 1)) {
        throw ArgumentError("budget exceeds pair count");
    }
    std::vector<Threshold> pairs;
    pairs.reserve(s * (z + 1));
    for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t q = 0; q <= z; ++q) {
            pairs.push_back({h[i](q), i, q});
        }
    }
    auto larger = [](const Threshold& a, const Threshold& b) {
        if (pair_precedes(b.value, b.site, a.value, a.site)) {
            return true;
        }
        if (pair_precedes(a.value, a.site, b.value, b.site)) {
            return false;
        }
        return a.q0 < b.q0;
    };
    auto nth = pairs.begin() + static_cast<std::ptrdiff_t>(2 * z);
    std::nth_element(pairs.begin(), nth, pairs.end(), larger);
    return *nth;
}

std::size_t site_budget(const StepFunction& h, std::size_t site, const Threshold& threshold, std::size_t z) {
    if (site == threshold.site) {
        const double target = h(threshold.q0);
        for (std::size_t x : h.xs()) {
            if (h(x) == target) {
                return x;
            }
        }
        throw std::logic_error("selected site has no breakpoint with the broadcast value");
    }
    for (std::size_t q = 0; q <= z; ++q) {
        if (pair_precedes(h(q), site, threshold.value, threshold.site)) {
            return q;
        }
    }
    return z;
}

std::size_t gamma_slot(std::span<const std::size_t> gamma, std::size_t q) {
    auto it = std::lower_bound(gamma.begin(), gamma.end(), q);
    if (it == gamma.end()) {
        throw ArgumentError("budget above the largest Gamma value");
    }
    return static_cast<std::size_t>(it - gamma.begin());
}

std::uint64_t CommLedger::total_points() const {
    std::uint64_t sum = 0;
    for (const auto& p : phases) {
        sum += p.points;
    }
    return sum;
}

std::uint64_t CommLedger::total_far_points() const {
    std::uint64_t sum = 0;
    for (const auto& p : phases) {
        sum += p.far_points;
    }
    return sum;
}

std::uint64_t CommLedger::total_machinery_points() const {
    std::uint64_t sum = 0;
    for (const auto& p : phases) {
        sum += p.machinery_points;
    }
    return sum;
}

std::uint64_t CommLedger::total_floats() const {
    std::uint64_t sum = 0;
    for (const auto& p : phases) {
        sum += p.floats;
    }
    return sum;
}

nlohmann::json CommLedger::to_json() const {
    nlohmann::json rounds = nlohmann::json::array();
    for (const auto& p : phases) {
        rounds.push_back({{"round", p.round},
                          {"direction", p.direction},
                          {"points", p.points},
                          {"far_points", p.far_points},
                          {"machinery_points", p.machinery_points},
                          {"floats", p.floats},
                          {"messages", p.messages}});
    }
    return {{"floats_per_point", floats_per_point},
            {"phases", rounds},
            {"points_sent", total_points()},
            {"far_points", total_far_points()},
            {"machinery_points", total_machinery_points()},
            {"floats_sent", total_floats()}};
}

ProtocolResult run_protocol(const PointSet& ps, const ShardedInstance& sharding, const ParamSet& params,
                            const SiteOptions& opts, std::uint64_t master_seed, bool parallel) {
    if (params.n != ps.size()) {
        throw ArgumentError("parameters were built for a different n");
    }
    const std::size_t s = sharding.sites();
    if (s < 2) {
        throw ArgumentError("distributed instances need at least 2 sites");
    }
    ProtocolResult out;
    out.ledger.floats_per_point = ps.mode() == MetricMode::euclidean ? ps.dim() + 1 : 2;

    // Round 1: sites build their profiles independently.
    out.profiles.resize(s);
    std::vector<std::vector<std::string>> site_logs(s);
    std::vector<std::exception_ptr> errors(s);
    auto work = [&](std::size_t i) {
        try {
            PointSet shard = ps.subset(sharding.shards[i]);
            out.profiles[i] = site_round1(shard, i, params, opts, derive_seed(master_seed, i), &site_logs[i]);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    };
    if (parallel) {
        std::vector<std::thread> pool;
        for (std::size_t i = 0; i < s; ++i) {
            pool.emplace_back(work, i);
        }
        for (auto& t : pool) {
            t.join();
        }
    } else {
        for (std::size_t i = 0; i < s; ++i) {
            work(i);
        }
    }
    for (std::size_t i = 0; i < s; ++i) {
        if (errors[i]) {
            std::rethrow_exception(errors[i]);
        }
        out.log.insert(out.log.end(), site_logs[i].begin(), site_logs[i].end());
    }

    CommPhase up1{1, "site_to_coordinator", 0, 0, 0, 0, s};
    std::vector<StepFunction> h;
    for (const auto& profile : out.profiles) {
        up1.floats += 2 * profile.gamma.size();
        h.push_back(profile.step());
    }
    out.ledger.phases.push_back(up1);

    out.threshold = coordinator_select(h, params.z);
    out.ledger.phases.push_back({1, "coordinator_to_sites", 0, 0, 0, 2 * s, s});

    // Round 2: each site sends the coreset for its budget.
    CommPhase up2{2, "site_to_coordinator", 0, 0, 0, 0, s};
    WeightedCoreset& global = out.coreset;
    global.source_n = ps.size();
    global.meta.algorithm = CoresetAlgorithm::distributed;
    global.meta.k = params.k;
    global.meta.z = params.z;
    global.meta.eta = params.eta;
    global.meta.mu = params.mu;
    global.meta.rho = opts.algorithm == SiteAlgorithm::known_rho ? opts.rho : 0.0;
    std::vector<WeightedPoint> far;
    if (opts.coreset.keep_assignment) {
        global.absorbed_by.assign(ps.size(), 0);
    }
    for (std::size_t i = 0; i < s; ++i) {
        const std::size_t z_i = site_budget(h[i], i, out.threshold, params.z);
        out.budgets.push_back(z_i);
        const auto& profile = out.profiles[i];
        const auto& cs = profile.coresets[gamma_slot(profile.gamma, z_i)];
        const auto& shard = sharding.shards[i];
        for (const auto& e : cs.center_entries()) {
            global.entries.push_back({shard[e.index], e.weight});
        }
        for (const auto& e : cs.far_points()) {
            far.push_back({shard[e.index], e.weight});
        }
        if (opts.coreset.keep_assignment) {
            for (std::size_t local = 0; local < cs.absorbed_by.size(); ++local) {
                global.absorbed_by[shard[local]] = shard[cs.absorbed_by[local]];
            }
        }
        up2.points += cs.entries.size();
        up2.far_points += cs.far_points().size();
        up2.machinery_points += cs.center_entries().size();
        global.meta.r_tilde = std::max(global.meta.r_tilde, cs.meta.r_tilde);
        global.meta.rounds = std::max(global.meta.rounds, cs.meta.rounds);
        global.meta.fallback = global.meta.fallback || cs.meta.fallback;
        global.meta.cap_hit = global.meta.cap_hit || cs.meta.cap_hit;
    }
    global.meta.centers = global.entries.size();
    std::sort(far.begin(), far.end(), [](const WeightedPoint& a, const WeightedPoint& b) { return a.index < b.index; });
    global.entries.insert(global.entries.end(), far.begin(), far.end());
    global.meta.far_count = far.size();
    up2.floats = up2.points * out.ledger.floats_per_point;
    out.ledger.phases.push_back(up2);
    return out;
}

MinimaxResult minimax_oracle(std::span<const StepFunction> h, std::size_t z) {
    const std::size_t s = h.size();
    if (s == 0) {
        throw ArgumentError("no sites");
    }
    double combos = 1.0;
    for (std::size_t i = 0; i < s; ++i) {
        combos *= static_cast<double>(z + 1);
    }
    if (combos > static_cast<double>(minimax_budget)) {
        throw GuardError("minimax enumeration exceeds its budget");
    }
    // Tabulate h once so the enumeration is pure lookups.
    std::vector<std::vector<double>> table(s, std::vector<double>(z + 1));
    for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t q = 0; q <= z; ++q) {
            table[i][q] = h[i](q);
        }
    }
    MinimaxResult best;
    best.value = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> q(s, 0);
    while (true) {
        std::size_t sum = 0;
        double worst = 0.0;
        for (std::size_t i = 0; i < s; ++i) {
            sum += q[i];
            worst = std::max(worst, table[i][q[i]]);
        }
        if (sum <= 2 * z && worst < best.value) {
            best.value = worst;
            best.assignment = q;
        }
        std::size_t pos = 0;
        while (pos < s && q[pos] == z) {
            q[pos++] = 0;
        }
        if (pos == s) {
            break;
        }
        ++q[pos];
    }
    return best;
}

}  // namespace kcenter
