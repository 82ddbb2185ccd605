#include "kcenter/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include "kcenter/coreset.hpp"
#include "kcenter/csv_io.hpp"
#include "kcenter/distributed.hpp"
#include "kcenter/greedy.hpp"
#include "kcenter/hosts.hpp"

namespace kcenter {

namespace {

struct AlgoName {
    Algo algo;
    const char* name;
};

constexpr AlgoName algo_names[] = {
    {Algo::bicriteria, "bicriteria"},
    {Algo::sublinear, "sublinear"},
    {Algo::two_approx, "two-approx"},
    {Algo::two_approx_boosted, "two-approx-boosted"},
    {Algo::gonzalez, "gonzalez"},
    {Algo::charikar, "charikar"},
    {Algo::coreset_known, "coreset-known"},
    {Algo::coreset_unknown, "coreset-unknown"},
    {Algo::uniform, "uniform"},
    {Algo::distributed, "distributed"},
};

// Full-set charikar keeps an n x n matrix; beyond this it is refused.
constexpr std::size_t charikar_limit = 5000;

}  // namespace

std::string to_string(Algo algo) {
    for (const auto& a : algo_names) {
        if (a.algo == algo) {
            return a.name;
        }
    }
    return "unknown";
}

Algo algo_from_string(const std::string& name) {
    for (const auto& a : algo_names) {
        if (name == a.name) {
            return a.algo;
        }
    }
    throw ArgumentError("unknown algorithm '" + name + "'");
}

std::vector<Algo> parse_algo_list(const std::string& text) {
    std::vector<Algo> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (!item.empty()) {
            out.push_back(algo_from_string(item));
        }
    }
    if (out.empty()) {
        throw ArgumentError("no algorithm selected");
    }
    return out;
}

LoadedInstance load_instance(const ExperimentSpec& spec) {
    if (spec.input.has_value() == spec.generator.has_value()) {
        throw ArgumentError("give exactly one of an input file or a generator spec");
    }
    LoadedInstance out{PointSet::euclidean({0.0}, 1), {}, 0, std::nullopt};
    if (spec.input) {
        out.points = spec.matrix_input ? load_distance_matrix_csv(*spec.input) : load_points_csv(*spec.input);
    } else {
        auto planted = generate(*spec.generator, spec.instance_seed);
        out.points = std::move(planted.points);
        out.truth_outliers = std::move(planted.outliers);
        out.planted_r_opt = planted.r_opt;
    }
    if (spec.inject_fraction) {
        Rng rng(derive_seed(spec.instance_seed, 0x1e7ec7));
        auto injected = inject_outliers(out.points, *spec.inject_fraction, spec.inject_scale, rng);
        out.points = std::move(injected.points);
        out.truth_outliers.insert(out.truth_outliers.end(), injected.injected.begin(), injected.injected.end());
        out.planted_r_opt.reset();
    }
    out.hash = hash_points(out.points);
    return out;
}

namespace {

double recall(const std::vector<Index>& excluded, const std::vector<Index>& truth) {
    if (truth.empty()) {
        return 0.0;
    }
    std::size_t hit = 0;
    for (Index t : truth) {
        if (std::binary_search(excluded.begin(), excluded.end(), t)) {
            ++hit;
        }
    }
    return static_cast<double>(hit) / static_cast<double>(truth.size());
}

void record_centers(nlohmann::json& rec, const PointSet& ps, const CenterSet& centers, const ParamSet& params,
                    const LoadedInstance& instance) {
    auto eval0 = phi_eps(ps, centers, params.z, 0.0);
    rec["centers"] = centers.size();
    rec["phi_eps"] = phi_eps(ps, centers, params.z, params.eps).radius;
    rec["phi_0"] = eval0.radius;
    rec["output_hash"] = hash_indices(centers.indices);
    if (!instance.truth_outliers.empty()) {
        rec["outlier_recall"] = recall(eval0.excluded, instance.truth_outliers);
    }
}

void record_coreset(nlohmann::json& rec, const PointSet& ps, const WeightedCoreset& cs, const ParamSet& params,
                    const LoadedInstance& instance) {
    rec["coreset_size"] = cs.entries.size();
    rec["coreset_weight"] = cs.total_weight();
    rec["coreset_centers"] = cs.meta.centers;
    rec["coreset_far"] = cs.meta.far_count;
    rec["r_tilde"] = cs.meta.r_tilde;
    rec["fallback"] = cs.meta.fallback;
    rec["output_hash"] = hash_coreset(cs);
    if (cs.entries.size() <= charikar_limit) {
        auto composed = compose_with_host(cs, ps, params, charikar_host());
        rec["centers"] = composed.centers.size();
        rec["phi_eps"] = phi_eps(ps, composed.centers, params.z, params.eps).radius;
        rec["phi_0"] = composed.eval.radius;
        if (!instance.truth_outliers.empty()) {
            rec["outlier_recall"] = recall(composed.eval.excluded, instance.truth_outliers);
        }
    }
}

nlohmann::json run_one(const ExperimentSpec& spec, const LoadedInstance& instance, const ParamSet& params,
                       std::uint64_t seed, Algo algo) {
    const PointSet& ps = instance.points;
    nlohmann::json rec = {{"seed", seed},
                          {"algorithm", to_string(algo)},
                          {"instance_hash", instance.hash},
                          {"n", ps.size()},
                          {"k", params.k},
                          {"z", params.z},
                          {"eps", params.eps},
                          {"eta", params.eta},
                          {"mu", params.mu}};
    if (instance.planted_r_opt) {
        rec["planted_r_opt"] = *instance.planted_r_opt;
    }
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(algo)));
    DistanceCounter counter;
    const auto start = std::chrono::steady_clock::now();
    auto stop_clock = [&] {
        rec["dist_evals"] = counter.count();
        rec["wall_ms"] =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    };

    switch (algo) {
        case Algo::bicriteria: {
            auto centers = bicriteria(ps, make_greedy_config(params), rng);
            stop_clock();
            record_centers(rec, ps, centers, params, instance);
            break;
        }
        case Algo::sublinear: {
            auto centers = sublinear_bicriteria(ps, make_greedy_config(params), make_sublinear_config(params), rng);
            stop_clock();
            record_centers(rec, ps, centers, params, instance);
            break;
        }
        case Algo::two_approx: {
            auto centers = two_approx(ps, params, rng);
            stop_clock();
            record_centers(rec, ps, centers, params, instance);
            break;
        }
        case Algo::two_approx_boosted: {
            auto centers = two_approx_boosted(ps, params, std::nullopt, rng);
            stop_clock();
            record_centers(rec, ps, centers, params, instance);
            break;
        }
        case Algo::gonzalez: {
            auto centers = gonzalez(ps, params.k, std::nullopt, rng);
            stop_clock();
            record_centers(rec, ps, centers, params, instance);
            break;
        }
        case Algo::charikar: {
            if (ps.size() > charikar_limit) {
                throw GuardError("charikar on the full set is limited to 5000 points");
            }
            std::vector<WeightedPoint> unit;
            for (Index p = 0; p < ps.size(); ++p) {
                unit.push_back({p, 1});
            }
            auto centers = charikar_3approx(ps, unit, params.k, params.z);
            stop_clock();
            record_centers(rec, ps, centers, params, instance);
            break;
        }
        case Algo::coreset_known: {
            auto cs = coreset_known_rho(ps, params, spec.rho, rng);
            stop_clock();
            rec["rho"] = spec.rho;
            record_coreset(rec, ps, cs, params, instance);
            break;
        }
        case Algo::coreset_unknown: {
            auto cs = coreset_unknown_rho(ps, params, rng);
            stop_clock();
            rec["cap_hit"] = cs.meta.cap_hit;
            record_coreset(rec, ps, cs, params, instance);
            break;
        }
        case Algo::uniform: {
            auto sample = uniform_sample(ps, params, std::nullopt, rng);
            auto weighted = sample.as_weighted();
            if (weighted.size() > charikar_limit) {
                throw GuardError("uniform sample too large for the host solver");
            }
            auto centers = charikar_3approx(ps, weighted, params.k, sample.z_prime);
            stop_clock();
            rec["sample_size"] = sample.indices.size();
            rec["z_prime"] = sample.z_prime;
            record_centers(rec, ps, centers, params, instance);
            break;
        }
        case Algo::distributed: {
            Rng shard_rng(derive_seed(seed, 0x5a4d));
            ShardedInstance sharding;
            if (spec.shards_path) {
                std::ifstream in(*spec.shards_path);
                if (!in) {
                    throw ArgumentError("cannot open shard spec '" + *spec.shards_path + "'");
                }
                nlohmann::json j;
                try {
                    in >> j;
                } catch (const nlohmann::json::exception& ex) {
                    throw ArgumentError(std::string("malformed shard spec: ") + ex.what());
                }
                sharding = ShardedInstance::from_json(j, ps.size());
            } else {
                sharding = ShardedInstance::random_balanced(ps.size(), spec.sites, shard_rng);
            }
            SiteOptions opts;
            auto result = run_protocol(ps, sharding, params, opts, derive_seed(seed, 0xd157), false);
            stop_clock();
            rec["sites"] = sharding.sites();
            rec["budgets"] = result.budgets;
            rec["ledger"] = result.ledger.to_json();
            rec["ledger"]["bound_4z_plus_machinery"] = 4 * params.z + result.ledger.total_machinery_points();
            record_coreset(rec, ps, result.coreset, params, instance);
            break;
        }
    }
    return rec;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentSpec& spec) {
    return run_experiment(spec, load_instance(spec));
}

ExperimentResult run_experiment(const ExperimentSpec& spec, const LoadedInstance& instance) {
    if (spec.algorithms.empty()) {
        throw ArgumentError("no algorithm selected");
    }
    if (spec.seeds.empty()) {
        throw ArgumentError("no seeds given");
    }
    const ParamSet params = ParamSet::make(instance.points.size(), spec.k, spec.z, spec.eps, spec.eta, spec.mu);
    for (Algo a : spec.algorithms) {
        if (a == Algo::distributed && !spec.shards_path && spec.sites < 2) {
            throw ArgumentError("distributed runs need --sites >= 2 or a shard file");
        }
        if ((a == Algo::sublinear || a == Algo::uniform) && spec.z == 0) {
            throw ArgumentError(to_string(a) + " needs z >= 1");
        }
    }

    struct Job {
        std::uint64_t seed;
        Algo algo;
    };
    std::vector<Job> jobs;
    for (auto seed : spec.seeds) {
        for (auto algo : spec.algorithms) {
            jobs.push_back({seed, algo});
        }
    }
    std::vector<nlohmann::json> records(jobs.size());
    std::vector<std::exception_ptr> errors(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t j = next++; j < jobs.size(); j = next++) {
            try {
                records[j] = run_one(spec, instance, params, jobs[j].seed, jobs[j].algo);
            } catch (...) {
                errors[j] = std::current_exception();
            }
        }
    };
    unsigned threads = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, jobs.size()));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto& t : pool) {
        t.join();
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    ExperimentResult out;
    out.instance_hash = instance.hash;
    out.records = std::move(records);
    out.aggregates = aggregate(out.records);
    return out;
}

std::vector<nlohmann::json> aggregate(const std::vector<nlohmann::json>& records) {
    static const char* metrics[] = {"phi_eps", "phi_0", "wall_ms", "dist_evals", "centers", "coreset_size"};
    std::vector<std::string> order;
    for (const auto& r : records) {
        auto name = r.at("algorithm").get<std::string>();
        if (std::find(order.begin(), order.end(), name) == order.end()) {
            order.push_back(name);
        }
    }
    std::vector<nlohmann::json> out;
    for (const auto& name : order) {
        nlohmann::json agg = {{"algorithm", name}};
        std::size_t count = 0;
        for (const auto& r : records) {
            if (r.at("algorithm") == name) {
                ++count;
                agg["instance_hash"] = r.at("instance_hash");
            }
        }
        agg["count"] = count;
        for (const char* m : metrics) {
            std::vector<double> values;
            for (const auto& r : records) {
                if (r.at("algorithm") == name && r.contains(m)) {
                    values.push_back(r.at(m).get<double>());
                }
            }
            if (values.empty()) {
                continue;
            }
            double mean = 0.0;
            for (double v : values) {
                mean += v;
            }
            mean /= static_cast<double>(values.size());
            double var = 0.0;
            for (double v : values) {
                var += (v - mean) * (v - mean);
            }
            // Sample standard deviation; a single run reports 0.
            double sd = values.size() > 1 ? std::sqrt(var / static_cast<double>(values.size() - 1)) : 0.0;
            agg[std::string(m) + "_mean"] = mean;
            agg[std::string(m) + "_std"] = sd;
        }
        out.push_back(std::move(agg));
    }
    return out;
}

void write_json_lines(std::ostream& out, const std::vector<nlohmann::json>& records) {
    for (const auto& r : records) {
        out << r.dump() << '\n';
    }
}

void write_summary_csv(std::ostream& out, const std::vector<nlohmann::json>& aggregates) {
    static const char* metrics[] = {"phi_eps", "phi_0", "wall_ms", "dist_evals", "centers", "coreset_size"};
    out << "algorithm,count,instance_hash";
    for (const char* m : metrics) {
        out << ',' << m << "_mean," << m << "_std";
    }
    out << '\n';
    out << std::setprecision(10);
    for (const auto& a : aggregates) {
        out << a.at("algorithm").get<std::string>() << ',' << a.at("count").get<std::size_t>() << ','
            << a.at("instance_hash").get<std::uint64_t>();
        for (const char* m : metrics) {
            std::string mean = std::string(m) + "_mean";
            std::string sd = std::string(m) + "_std";
            if (a.contains(mean)) {
                out << ',' << a.at(mean).get<double>() << ',' << a.at(sd).get<double>();
            } else {
                out << ",,";
            }
        }
        out << '\n';
    }
}

}  // namespace kcenter
