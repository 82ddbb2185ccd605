#ifndef KCENTER_EXPERIMENT_HPP
#define KCENTER_EXPERIMENT_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "kcenter/instance.hpp"
#include "kcenter/metric.hpp"

namespace kcenter {

enum class Algo {
    bicriteria,
    sublinear,
    two_approx,
    two_approx_boosted,
    gonzalez,
    charikar,
    coreset_known,
    coreset_unknown,
    uniform,
    distributed,
};

std::string to_string(Algo algo);
Algo algo_from_string(const std::string& name);
/// Comma-separated list of algorithm names.
std::vector<Algo> parse_algo_list(const std::string& text);

struct ExperimentSpec {
    std::optional<std::string> input;
    bool matrix_input = false;
    std::optional<GeneratorSpec> generator;
    std::uint64_t instance_seed = 0;
    std::optional<double> inject_fraction;
    double inject_scale = 1.1;

    std::vector<Algo> algorithms;
    std::size_t k = 0;
    std::size_t z = 0;
    double eps = 1.0;
    double mu = 0.5;
    double eta = 0.25;
    double rho = 1.0;
    std::vector<std::uint64_t> seeds{0};

    std::size_t sites = 0;
    std::optional<std::string> shards_path;
    unsigned threads = 0;
};

struct LoadedInstance {
    PointSet points;
    /// Ground-truth outliers (generated or injected), empty when unknown.
    std::vector<Index> truth_outliers;
    std::uint64_t hash = 0;
    std::optional<double> planted_r_opt;
};

LoadedInstance load_instance(const ExperimentSpec& spec);

struct ExperimentResult {
    std::uint64_t instance_hash = 0;
    std::vector<nlohmann::json> records;
    std::vector<nlohmann::json> aggregates;
};

/**
 * Validates the spec against the instance, then runs every (seed, algorithm)
 * pair; records come back in (seed, algorithm) order regardless of thread
 * count.
 */
ExperimentResult run_experiment(const ExperimentSpec& spec);
ExperimentResult run_experiment(const ExperimentSpec& spec, const LoadedInstance& instance);

/// One record per algorithm over all seeds: count, mean and standard deviation.
std::vector<nlohmann::json> aggregate(const std::vector<nlohmann::json>& records);

void write_json_lines(std::ostream& out, const std::vector<nlohmann::json>& records);
void write_summary_csv(std::ostream& out, const std::vector<nlohmann::json>& aggregates);

}  // namespace kcenter

#endif  // KCENTER_EXPERIMENT_HPP
