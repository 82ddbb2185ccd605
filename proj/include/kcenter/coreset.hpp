#ifndef KCENTER_CORESET_HPP
#define KCENTER_CORESET_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kcenter/cost.hpp"
#include "kcenter/metric.hpp"
#include "kcenter/random.hpp"

namespace kcenter {

enum class CoresetAlgorithm { alg4, alg5, uniform, distributed, identity };

std::string to_string(CoresetAlgorithm algorithm);
CoresetAlgorithm coreset_algorithm_from_string(const std::string& name);

struct CoresetMeta {
    CoresetAlgorithm algorithm = CoresetAlgorithm::identity;
    /// Mapping radius: every absorbed point lies within this of its coreset point.
    double r_tilde = 0.0;
    /// Radius after the first phase (equals r_tilde for the known-rho builder).
    double r_phase1 = 0.0;
    std::size_t k = 0;
    std::size_t z = 0;
    double eps = 1.0;
    double eta = 0.0;
    double mu = 0.0;
    double rho = 0.0;
    std::size_t centers = 0;
    std::size_t far_count = 0;
    std::size_t rounds = 0;
    bool fallback = false;
    bool cap_hit = false;

    friend bool operator==(const CoresetMeta&, const CoresetMeta&) = default;
};

/**
 * Weighted subset of a PointSet. Entries list the absorbing centers first
 * (in selection order), then the far points with weight 1 in ascending
 * index order. Weights sum to source_n.
 */
struct WeightedCoreset {
    std::vector<WeightedPoint> entries;
    std::size_t source_n = 0;
    CoresetMeta meta;
    /// Optional: for each source point, the index of the coreset point holding its weight.
    std::vector<Index> absorbed_by;

    std::uint64_t total_weight() const;
    std::vector<Index> indices() const;
    /// Far points: the trailing entries that were not used as centers.
    std::span<const WeightedPoint> far_points() const;
    std::span<const WeightedPoint> center_entries() const;

    friend bool operator==(const WeightedCoreset&, const WeightedCoreset&) = default;
};

struct CoresetOptions {
    /// Far-point budget of the known-rho builder is ceil((1 + eps) z).
    double eps = 1.0;
    /// Round cap for the second phase of the unknown-rho builder; defaults to n.
    std::optional<std::size_t> max_rounds;
    bool keep_assignment = false;
};

/// Every point with weight 1.
WeightedCoreset identity_coreset(const PointSet& ps, const ParamSet& params, bool keep_assignment = false);

/**
 * Known doubling dimension: l = ceil((2/mu)^rho k) and
 * t = ceil(c l / (1 - eta)) greedy rounds, then r~ = phi_eps with the
 * builder's eps; points within r~ are absorbed by their nearest center and
 * the rest are kept with weight 1. Falls back to the identity coreset when
 * c l / (1 - eta) exceeds n.
 */
WeightedCoreset coreset_known_rho(const PointSet& ps, const ParamSet& params, double rho, Rng& rng,
                                  const CoresetOptions& opts = {});

/**
 * Unknown doubling dimension: ceil(c k / (1 - eta)) rounds give r~ = phi_1,
 * then rounds with outlier parameter 3z continue until phi_5 <= (mu / 2) r~.
 * The mapping radius is the final phi_5. Falls back to the identity
 * coreset when 6z >= n or when the round cap is hit.
 */
WeightedCoreset coreset_unknown_rho(const PointSet& ps, const ParamSet& params, Rng& rng,
                                    const CoresetOptions& opts = {});

struct UniformSample {
    std::vector<Index> indices;
    std::size_t z_prime = 0;

    std::vector<WeightedPoint> as_weighted() const;
};

/// min(n, ceil(40 / (eps^2 gamma) * k D * ln(k D / (eps gamma eta)))).
std::size_t default_uniform_sample_size(const ParamSet& params, std::size_t dim);

/// Uniform sample without replacement with outlier budget z' = ceil((1 + eps) gamma |S|).
UniformSample uniform_sample(const PointSet& ps, const ParamSet& params, std::optional<std::size_t> size_override,
                             Rng& rng);

/// Weighted k-center solver with z units of outlier weight.
using Host = std::function<CenterSet(const PointSet&, std::span<const WeightedPoint>, std::size_t, std::uint64_t)>;

Host charikar_host();
Host brute_force_host();

struct ComposedSolution {
    CenterSet centers;
    ClusteringEval eval;
};

/// Runs the host on the coreset and evaluates its centers on the full set with exactly z exclusions.
ComposedSolution compose_with_host(const WeightedCoreset& cs, const PointSet& ps, const ParamSet& params,
                                   const Host& host);

/// Stable hash of entries, source_n and the numeric meta fields.
std::uint64_t hash_coreset(const WeightedCoreset& cs);

}  // namespace kcenter

#endif  // KCENTER_CORESET_HPP
