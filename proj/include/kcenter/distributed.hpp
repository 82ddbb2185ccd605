#ifndef KCENTER_DISTRIBUTED_HPP
#define KCENTER_DISTRIBUTED_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "kcenter/coreset.hpp"
#include "kcenter/metric.hpp"
#include "kcenter/random.hpp"

namespace kcenter {

/// Disjoint shards covering [0, n); s >= 2, every shard non-empty. Site ids are 0-based.
struct ShardedInstance {
    std::vector<std::vector<Index>> shards;

    static ShardedInstance make(std::vector<std::vector<Index>> shards, std::size_t n);
    static ShardedInstance random_balanced(std::size_t n, std::size_t sites, Rng& rng);
    /// {"0": [indices...], "1": [...], ...}
    static ShardedInstance from_json(const nlohmann::json& j, std::size_t n);
    nlohmann::json to_json() const;

    std::size_t sites() const { return shards.size(); }
};

/// {2^r : 1 <= r <= floor(log2 z)} with 0 and z, ascending. z = 0 gives {0}.
std::vector<std::size_t> build_gamma(std::size_t z);

/// h(x) = y_i for x_i <= x < x_{i+1}, with x_{l+1} = infinity.
class StepFunction {
public:
    StepFunction() = default;
    StepFunction(std::vector<std::size_t> xs, std::vector<double> ys);

    double operator()(std::size_t x) const;
    std::span<const std::size_t> xs() const { return xs_; }
    std::span<const double> ys() const { return ys_; }
    bool non_increasing() const;

private:
    std::vector<std::size_t> xs_;
    std::vector<double> ys_;
};

/**
 * Makes radii non-increasing: slot i takes the smallest radius among slots
 * j <= i, and `source[i]` is the slot whose coreset replaces slot i's
 * (the last one at or before i attaining that radius). A reused coreset was built for a smaller budget, so
 * its far-point count stays within slot i's budget.
 */
struct RepairResult {
    std::vector<double> radii;
    std::vector<std::size_t> source;
};
RepairResult monotone_repair(std::span<const double> radii);

enum class SiteAlgorithm { unknown_rho, known_rho };

struct SiteOptions {
    SiteAlgorithm algorithm = SiteAlgorithm::unknown_rho;
    double rho = 1.0;
    CoresetOptions coreset;
};

struct SiteProfile {
    std::size_t site_id = 0;
    std::vector<std::size_t> gamma;
    /// Radii after the monotone repair.
    std::vector<double> radii;
    std::vector<double> raw_radii;
    /// Coresets in shard-local indices, after the repair.
    std::vector<WeightedCoreset> coresets;
    std::vector<std::size_t> source_q;

    StepFunction step() const { return StepFunction(gamma, radii); }
};

/**
 * Round 1 at one site: a coreset for every q in Gamma (q clamped to
 * n_i - k when larger), followed by the monotone repair. A shard with at
 * most k points sends its identity coreset for every q.
 */
SiteProfile site_round1(const PointSet& shard, std::size_t site_id, const ParamSet& params,
                        const SiteOptions& opts, std::uint64_t site_seed, std::vector<std::string>* log = nullptr);

/// The broadcast pair (value, site) plus the q that produced it.
struct Threshold {
    double value = 0.0;
    std::size_t site = 0;
    std::size_t q0 = 0;

    friend bool operator==(const Threshold&, const Threshold&) = default;
};

/// (a, i) precedes (b, j) when a < b, or a == b and i < j.
bool pair_precedes(double a, std::size_t i, double b, std::size_t j);

/// The (2z+1)-th largest of the s(z+1) pairs (h_i(q), i), q in [0, z].
Threshold coordinator_select(std::span<const StepFunction> h, std::size_t z);

/// Outlier budget z_i chosen by site `site` after the broadcast.
std::size_t site_budget(const StepFunction& h, std::size_t site, const Threshold& threshold, std::size_t z);

/// Smallest Gamma slot with gamma[slot] >= q.
std::size_t gamma_slot(std::span<const std::size_t> gamma, std::size_t q);

struct CommPhase {
    std::size_t round = 0;
    std::string direction;
    std::uint64_t points = 0;
    std::uint64_t far_points = 0;
    std::uint64_t machinery_points = 0;
    std::uint64_t floats = 0;
    std::uint64_t messages = 0;
};

struct CommLedger {
    /// Floats per weighted point: coordinates plus weight (index plus weight in matrix mode).
    std::size_t floats_per_point = 0;
    std::vector<CommPhase> phases;

    std::uint64_t total_points() const;
    std::uint64_t total_far_points() const;
    std::uint64_t total_machinery_points() const;
    std::uint64_t total_floats() const;
    nlohmann::json to_json() const;
};

struct ProtocolResult {
    std::vector<SiteProfile> profiles;
    Threshold threshold;
    std::vector<std::size_t> budgets;
    /// Union of the sent coresets in global indices.
    WeightedCoreset coreset;
    CommLedger ledger;
    std::vector<std::string> log;
};

/**
 * Two-round coordinator protocol. Sites build their profiles concurrently,
 * each from its own seed derived from `master_seed`.
 */
ProtocolResult run_protocol(const PointSet& ps, const ShardedInstance& sharding, const ParamSet& params,
                            const SiteOptions& opts, std::uint64_t master_seed, bool parallel = true);

struct MinimaxResult {
    double value = 0.0;
    std::vector<std::size_t> assignment;
};

inline constexpr std::uint64_t minimax_budget = 10'000'000;

/// min over q in [0, z]^s with sum q <= 2z of max_i h_i(q_i), by enumeration.
MinimaxResult minimax_oracle(std::span<const StepFunction> h, std::size_t z);

}  // namespace kcenter

#endif  // KCENTER_DISTRIBUTED_HPP
