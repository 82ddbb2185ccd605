// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "kcenter/coreset.hpp"
#include "kcenter/distributed.hpp"
#include "kcenter/experiment.hpp"
#include "kcenter/greedy.hpp"
#include "kcenter/hosts.hpp"
#include "kcenter/instance.hpp"
#include "oracles.hpp"

using namespace kcenter;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

/// Lower acceptance limit for a success frequency: p minus three binomial standard errors.
double rate_floor(double p, std::size_t trials) {
    return p - 3.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

/// The small instance with an exact optimum: 2 clusters of 9 points plus 2 outliers.
struct SmallInstance {
    PointSet points;
    double r_opt;
};

SmallInstance small_instance() {
    GeneratorSpec spec;
    spec.n_inliers = 18;
    spec.k_true = 2;
    spec.outliers = 2;
    auto inst = generate(spec, 17);
    double r = oracle::exhaustive_opt(inst.points, 2, 2);
    return {std::move(inst.points), r};
}

PlantedInstance planted_300() {
    GeneratorSpec spec;
    spec.n_inliers = 285;
    spec.k_true = 3;
    spec.outliers = 15;
    return generate(spec, 300);
}

constexpr std::size_t kSeeds = 50;

Outcome criterion1() {
    Rng gen(101);
    std::size_t agree = 0;
    std::string first_mismatch;
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 5 + uniform_index(gen, 8);
        const std::size_t k = 1 + uniform_index(gen, 3);
        const std::size_t z = uniform_index(gen, 3);
        auto ps = oracle::random_points(n, 1 + uniform_index(gen, 3), 10.0, gen);
        double fast = brute_force_opt(ps, k, z).r_opt;
        double slow = oracle::exhaustive_opt(ps, k, z);
        if (fast == slow) {
            ++agree;
        } else if (first_mismatch.empty()) {
            first_mismatch = fmt(" first mismatch %.17g vs %.17g", fast, slow);
        }
    }
    return {agree == 50, "exact radius agreement on " + std::to_string(agree) + "/50 instances" + first_mismatch};
}

/// Success frequencies of an algorithm on the planted n=300 and exact n=20 instances.
Outcome statistical_pair(const std::function<CenterSet(const PointSet&, const ParamSet&, Rng&)>& run,
                         double eta) {
    auto big = planted_300();
    auto big_params = ParamSet::make(300, 3, 15, 1.0, eta);
    auto small = small_instance();
    auto small_params = ParamSet::make(20, 2, 2, 1.0, eta);
    std::size_t big_ok = 0;
    std::size_t small_ok = 0;
    for (std::uint64_t seed = 0; seed < kSeeds; ++seed) {
        Rng a(seed);
        auto e = run(big.points, big_params, a);
        big_ok += phi_eps(big.points, e, 15, 1.0).radius <= 2.0 * big.r_opt;
        Rng b(seed);
        auto f = run(small.points, small_params, b);
        small_ok += phi_eps(small.points, f, 2, 1.0).radius <= 2.0 * small.r_opt;
    }
    const double floor = rate_floor(1.0 - 2.0 * eta, kSeeds);
    const double fb = static_cast<double>(big_ok) / kSeeds;
    const double fs = static_cast<double>(small_ok) / kSeeds;
    return {fb >= floor && fs >= floor, fmt("success n=300: %.2f, n=20: %.2f (floor %.3f)", fb, fs, floor)};
}

Outcome criterion2() {
    return statistical_pair(
        [](const PointSet& ps, const ParamSet& p, Rng& rng) { return bicriteria(ps, make_greedy_config(p), rng); },
        0.25);
}

Outcome criterion3() {
    auto small = small_instance();
    auto params = ParamSet::make(20, 2, 2, 1.0);
    std::size_t ok = 0;
    for (std::uint64_t seed = 0; seed < kSeeds; ++seed) {
        Rng rng(seed);
        auto e = two_approx_boosted(small.points, params, std::nullopt, rng);
        ok += phi_eps(small.points, e, 2, 1.0).radius <= 2.0 * small.r_opt;
    }
    const double rate = static_cast<double>(ok) / kSeeds;
    return {rate >= 0.8, fmt("success %.2f with %.0f repetitions (floor 0.80)", rate,
                             static_cast<double>(default_boost_repetitions(params)))};
}

Outcome criterion4() {
    auto stats = statistical_pair(
        [](const PointSet& ps, const ParamSet& p, Rng& rng) {
            return sublinear_bicriteria(ps, make_greedy_config(p), make_sublinear_config(p), rng);
        },
        0.25);
    auto counts = [](std::size_t n) {
        Rng gen(n);
        auto ps = oracle::random_points(n, 2, 10.0, gen);
        auto params = ParamSet::make(n, 3, n / 20);
        std::vector<std::uint64_t> out;
        Rng rng(5);
        sublinear_bicriteria(ps, make_greedy_config(params), make_sublinear_config(params), rng,
                             [&](const RoundInfo& info) { out.push_back(info.distance_evaluations); });
        return out;
    };
    auto small = counts(1000);
    auto large = counts(10000);
    const bool same = small == large;
    stats.pass = stats.pass && same;
    stats.detail += same ? "; per-round distance counts identical for n=1e3 and n=1e4 ("
                               + std::to_string(small.size()) + " rounds)"
                         : "; per-round distance counts differ between n=1e3 and n=1e4";
    return stats;
}

Outcome criterion5() {
    GeneratorSpec spec;
    spec.n_inliers = 300;
    spec.k_true = 2;
    spec.ambient_dim = 1;
    spec.intrinsic_dim = 1;
    spec.outliers = 10;
    auto inst = generate(spec, 55);
    const double eta = 0.25;
    auto params = ParamSet::make(inst.points.size(), 2, 10, 1.0, eta);
    const double rho = 1.0;
    const auto t = static_cast<std::size_t>(
        std::ceil(greedy_constant(2, eta) * std::pow(2.0, rho) * 2.0 / (1.0 - eta) - 1e-9));
    auto cfg = make_greedy_config(params, t);
    std::size_t ok = 0;
    for (std::uint64_t seed = 0; seed < kSeeds; ++seed) {
        Rng rng(seed);
        auto e = bicriteria(inst.points, cfg, rng);
        ok += oracle::naive_phi(inst.points, e.indices, 10, 1.0) <= inst.r_opt;
    }
    const double floor = rate_floor(1.0 - 2.0 * eta, kSeeds);
    const double rate = static_cast<double>(ok) / kSeeds;
    return {rate >= floor, fmt("ratio-1 success %.2f with t=%.0f (floor %.3f)", rate, static_cast<double>(t), floor)};
}

/// True when |cost(E, H) - cost(X, H)| <= tol * cost(X, H) for every H.
bool sandwich(const PointSet& ps, const WeightedCoreset& cs, const std::vector<std::vector<Index>>& hs,
              std::size_t z, double tol) {
    for (const auto& h : hs) {
        const double full = oracle::naive_phi(ps, h, z, 0.0);
        const double weighted = oracle::unit_copy_phi0(ps, cs.entries, h, z);
        if (std::abs(weighted - full) > tol * full + 1e-12) {
            return false;
        }
    }
    return true;
}

std::vector<std::vector<Index>> random_hs(std::size_t n, std::size_t k, std::size_t count, Rng& rng) {
    std::vector<std::vector<Index>> out;
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(oracle::random_subset(n, k, rng));
    }
    return out;
}

Outcome criterion6() {
    GeneratorSpec spec;
    spec.n_inliers = 1980;
    spec.k_true = 3;
    spec.ambient_dim = 10;
    spec.intrinsic_dim = 2;
    spec.outliers = 20;
    auto inst = generate(spec, 66);
    const std::size_t n = inst.points.size();
    const double eta = 0.25;
    const double floor = rate_floor(1.0 - 2.0 * eta, kSeeds);
    Outcome out;
    std::ostringstream detail;
    for (double mu : {0.25, 0.5}) {
        auto params = ParamSet::make(n, 3, 20, 1.0, eta, mu);
        for (int alg = 4; alg <= 5; ++alg) {
            std::size_t ok = 0;
            std::size_t size_violations = 0;
            for (std::uint64_t seed = 0; seed < kSeeds; ++seed) {
                Rng rng(seed);
                auto cs = alg == 4 ? coreset_known_rho(inst.points, params, 2.0, rng)
                                   : coreset_unknown_rho(inst.points, params, rng);
                const std::size_t far_cap = alg == 4 ? 40 : 120;
                if (cs.total_weight() != n || cs.entries.size() > far_cap + cs.meta.centers ||
                    cs.meta.far_count > far_cap) {
                    ++size_violations;
                }
                Rng hrng(derive_seed(seed, 7));
                ok += sandwich(inst.points, cs, random_hs(n, 3, 100, hrng), 20, mu);
            }
            const double rate = static_cast<double>(ok) / kSeeds;
            out.pass = out.pass && rate >= floor && size_violations == 0;
            detail << "alg" << alg << " mu=" << mu << ": " << rate << " (size violations " << size_violations
                   << "); ";
        }
    }
    out.detail = detail.str() + fmt("floor %.3f", floor);
    return out;
}

Outcome criterion7() {
    auto small = small_instance();
    const double mu = 0.1;
    auto params = ParamSet::make(20, 2, 2, 1.0, 0.25, mu);
    // The coreset cost bound is checked for every 2-subset of the 20 points.
    std::vector<std::vector<Index>> all_pairs;
    for (Index a = 0; a < 20; ++a) {
        for (Index b = a + 1; b < 20; ++b) {
            all_pairs.push_back({a, b});
        }
    }
    const double bound = 3.0 * (1.0 + mu) / (1.0 - mu) * small.r_opt;
    std::size_t successful = 0;
    std::size_t within = 0;
    std::size_t fallbacks = 0;
    std::size_t entries = 0;
    for (std::uint64_t seed = 0; seed < kSeeds; ++seed) {
        Rng rng(seed);
        auto cs = coreset_unknown_rho(small.points, params, rng);
        fallbacks += cs.meta.fallback;
        entries += cs.entries.size();
        if (!sandwich(small.points, cs, all_pairs, 2, mu)) {
            continue;
        }
        ++successful;
        auto composed = compose_with_host(cs, small.points, params, charikar_host());
        within += oracle::naive_phi(small.points, composed.centers.indices, 2, 0.0) <= bound + 1e-12;
    }
    return {successful > 0 && within == successful,
            fmt("%.0f of %.0f successful coresets within 3(1+mu)/(1-mu) r_opt = %.4f", static_cast<double>(within),
                static_cast<double>(successful), bound) +
                fmt(" (mean size %.1f, identity fallbacks %.0f)", static_cast<double>(entries) / kSeeds,
                    static_cast<double>(fallbacks))};
}

Outcome criterion8() {
    auto small = small_instance();
    const double eps = 0.5;
    auto params = ParamSet::make(20, 2, 2, eps);
    const auto exclusions = static_cast<std::size_t>(std::ceil((1.0 + eps) * (1.0 + eps) / (1.0 - eps) * 2.0 - 1e-9));
    std::size_t ok = 0;
    std::size_t sample_size = 10;
    for (std::uint64_t seed = 0; seed < kSeeds; ++seed) {
        Rng rng(seed);
        auto sample = uniform_sample(small.points, params, sample_size, rng);
        auto centers = charikar_3approx(small.points, sample.as_weighted(), 2, sample.z_prime);
        auto d = oracle::nearest_distances(small.points, centers.indices);
        ok += oracle::drop_farthest(d, exclusions).first <= 3.0 * small.r_opt;
    }
    const double rate = static_cast<double>(ok) / kSeeds;
    return {rate >= 0.6, fmt("success %.2f with |S|=%.0f, %.0f exclusions (floor 0.60)", rate,
                             static_cast<double>(sample_size), static_cast<double>(exclusions))};
}

struct ProtocolChecks {
    std::size_t runs = 0;
    std::size_t budget_ok = 0;
    std::size_t minimax_ok = 0;
    std::size_t ledger_ok = 0;
};

ProtocolResult checked_protocol(const PointSet& ps, std::size_t sites, const ParamSet& params,
                                const SiteOptions& opts, std::uint64_t seed, ProtocolChecks& checks) {
    Rng shard_rng(derive_seed(seed, 3));
    auto sharding = ShardedInstance::random_balanced(ps.size(), sites, shard_rng);
    auto res = run_protocol(ps, sharding, params, opts, seed);
    std::size_t sum = 0;
    for (auto b : res.budgets) {
        sum += b;
    }
    std::vector<StepFunction> h;
    for (const auto& p : res.profiles) {
        h.push_back(p.step());
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        worst = std::max(worst, h[i](res.budgets[i]));
    }
    ++checks.runs;
    checks.budget_ok += sum <= 2 * params.z;
    checks.minimax_ok += worst == minimax_oracle(h, params.z).value;
    checks.ledger_ok += res.ledger.total_points() <= 4 * params.z + res.ledger.total_machinery_points();
    return res;
}

Outcome criterion9() {
    ProtocolChecks checks;
    SiteOptions opts;
    opts.algorithm = SiteAlgorithm::known_rho;
    opts.rho = 2.0;

    // Main runs: s=3, z=12, mu=0.25; eta makes 1 - 2 s (2 + log2 z) eta about 0.66.
    GeneratorSpec spec;
    spec.n_inliers = 3588;
    spec.k_true = 3;
    spec.ambient_dim = 10;
    spec.intrinsic_dim = 2;
    spec.outliers = 12;
    auto inst = generate(spec, 99);
    const std::size_t n = inst.points.size();
    const std::size_t s = 3;
    const std::size_t z = 12;
    const double eta = 0.01;
    const double mu = 0.25;
    auto params = ParamSet::make(n, 3, z, 1.0, eta, mu);
    const double p = 1.0 - 2.0 * static_cast<double>(s) * (2.0 + std::log2(static_cast<double>(z))) * eta;
    std::size_t sandwich_ok = 0;
    std::size_t fallbacks = 0;
    for (std::uint64_t seed = 0; seed < kSeeds; ++seed) {
        auto res = checked_protocol(inst.points, s, params, opts, seed, checks);
        fallbacks += res.coreset.meta.fallback;
        Rng hrng(derive_seed(seed, 11));
        sandwich_ok += res.coreset.total_weight() == n &&
                       sandwich(inst.points, res.coreset, random_hs(n, 3, 100, hrng), z, 2.0 * mu);
    }

    // Extra runs over other site counts and budgets for (a)-(c).
    GeneratorSpec side;
    side.n_inliers = 1190;
    side.k_true = 2;
    side.outliers = 10;
    auto other = generate(side, 98);
    for (std::size_t sites : {2u, 4u}) {
        for (std::size_t zz : {1u, 5u, 10u}) {
            auto pp = ParamSet::make(other.points.size(), 2, zz, 1.0, 0.05, 0.5);
            for (std::uint64_t seed = 0; seed < 5; ++seed) {
                checked_protocol(other.points, sites, pp, opts, 1000 + seed, checks);
            }
        }
    }

    const double floor = rate_floor(p, kSeeds);
    const double rate = static_cast<double>(sandwich_ok) / kSeeds;
    const bool pass = checks.budget_ok == checks.runs && checks.minimax_ok == checks.runs &&
                      checks.ledger_ok == checks.runs && rate >= floor;
    std::ostringstream d;
    d << "(a) " << checks.budget_ok << "/" << checks.runs << " (b) " << checks.minimax_ok << "/" << checks.runs
      << " (c) " << checks.ledger_ok << "/" << checks.runs << " (d) " << rate << " vs floor "
      << floor << " (bound " << p << ", site fallbacks in " << fallbacks << " runs)";
    return {pass, d.str()};
}

Outcome criterion10() {
    ExperimentSpec spec;
    spec.generator = parse_generator_spec("n=600,k=3,D=3,dim=2,outliers=12");
    spec.instance_seed = 10;
    spec.k = 3;
    spec.z = 12;
    spec.sites = 3;
    spec.seeds = {1, 2};
    spec.algorithms = parse_algo_list(
        "bicriteria,sublinear,two-approx,two-approx-boosted,gonzalez,charikar,coreset-known,coreset-unknown,"
        "uniform,distributed");
    auto instance = load_instance(spec);
    auto fingerprint = [&](unsigned threads) {
        spec.threads = threads;
        auto res = run_experiment(spec, instance);
        std::vector<std::uint64_t> hashes;
        for (auto rec : res.records) {
            rec.erase("wall_ms");
            hashes.push_back(std::hash<std::string>{}(rec.dump()));
        }
        return hashes;
    };
    auto reference = fingerprint(1);
    std::size_t identical = 0;
    for (unsigned repeat = 0; repeat < 10; ++repeat) {
        identical += fingerprint(1 + repeat % 4) == reference;
    }
    auto small = small_instance();
    auto one = brute_force_opt(small.points, 2, 2, 1);
    std::size_t oracle_identical = 0;
    for (unsigned repeat = 0; repeat < 10; ++repeat) {
        auto again = brute_force_opt(small.points, 2, 2, 1 + repeat % 4);
        oracle_identical += again.opt_centers.indices == one.opt_centers.indices;
    }
    return {identical == 10 && oracle_identical == 10,
            std::to_string(identical) + "/10 repeats identical over " + std::to_string(reference.size()) +
                " records (10 algorithms x 2 seeds); brute force " + std::to_string(oracle_identical) + "/10"};
}

}  // namespace

int main() {
    const std::function<Outcome()> criteria[] = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                                 criterion6, criterion7, criterion8, criterion9, criterion10};
    int failures = 0;
    for (std::size_t i = 0; i < std::size(criteria); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i]();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("CRITERION %zu %s  %s  [%.1fs]\n", i + 1, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
        std::fflush(stdout);
        failures += !o.pass;
    }
    return failures == 0 ? 0 : 1;
}
