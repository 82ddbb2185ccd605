#ifndef KCENTER_GREEDY_HPP
#define KCENTER_GREEDY_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "kcenter/cost.hpp"
#include "kcenter/metric.hpp"
#include "kcenter/nearest.hpp"
#include "kcenter/random.hpp"

namespace kcenter {

/**
 * Round count and sample sizes of the bi-criteria greedy.
 *
 *   c                = 2 + 2 / (k (1 - eta)) * ln(1 / eta)
 *   t                = ceil(c k / (1 - eta))            (unless overridden)
 *   per_round_sample = ceil((1 + eps) / eps * ln(1 / eta))
 *   init_sample      = ceil(1 / (1 - gamma) * ln(1 / eta))
 */
struct GreedyConfig {
    ParamSet params;
    std::size_t t = 1;
    double c = 0.0;
    std::size_t per_round_sample = 1;
    std::size_t init_sample = 1;
};

GreedyConfig make_greedy_config(const ParamSet& params, std::optional<std::size_t> t_override = {});

/// The c constant alone; shared with the coreset builders.
double greedy_constant(std::size_t k, double eta);

/**
 * Per-round sample sizes of the sublinear variant.
 *
 *   sigma          = 2 / (1 + sqrt(1 + 4 (1 + eps) / (3 eps)))
 *   n_prime        = ceil(3 / (sigma^2 (1 + eps) gamma) * ln(4 / eta))
 *   take_per_round = ceil((1 + sigma)(1 + eps) gamma n_prime)
 */
struct SublinearConfig {
    double sigma = 0.0;
    std::size_t n_prime = 1;
    std::size_t take_per_round = 1;
};

SublinearConfig make_sublinear_config(const ParamSet& params);

/// Snapshot handed to a RoundObserver after each round (round 1 = initial sample).
struct RoundInfo {
    std::size_t round = 0;
    std::size_t centers = 0;
    std::uint64_t distance_evaluations = 0;
    /// Nearest-center distances of all points; empty for the sublinear variant.
    std::span<const double> mindist;
};

using RoundObserver = std::function<void(const RoundInfo&)>;

/**
 * Mutable state of one greedy run: the growing center set and its tracker.
 * Exposed so the coreset builders can keep running rounds with a different
 * outlier window after the bi-criteria phase.
 */
class GreedyRun {
public:
    explicit GreedyRun(const PointSet& ps);

    /// Draws `count` uniform points with replacement; repeats are no-ops.
    void initial_sample(std::size_t count, Rng& rng);

    /**
     * One greedy round: takes the `window` farthest points and draws
     * `draws` of them uniformly with replacement. Returns false without
     * drawing when every point already sits on a center.
     */
    bool round(std::size_t window, std::size_t draws, Rng& rng);

    const NearestTracker& tracker() const { return tracker_; }
    const CenterSet& centers() const { return centers_; }
    std::size_t rounds_done() const { return round_; }
    bool all_covered() const { return tracker_.max_distance() == 0.0; }

private:
    void add(Index p);

    NearestTracker tracker_;
    CenterSet centers_;
    std::vector<char> is_center_;
    std::size_t round_ = 0;
};

/// Size of the farthest-point window: max(1, ceil((1 + eps) z)), capped at n.
std::size_t outlier_window(std::size_t z, double eps, std::size_t n);

/// Bi-criteria randomized greedy with t rounds.
CenterSet bicriteria(const PointSet& ps, const GreedyConfig& cfg, Rng& rng,
                     const RoundObserver& observer = {});

/// Single-criterion variant: k rounds, one uniform draw per round.
CenterSet two_approx(const PointSet& ps, const ParamSet& params, Rng& rng);

/// ceil(ln(10) / (1 - gamma) * ((1 + eps) / eps)^(k - 1)).
std::size_t default_boost_repetitions(const ParamSet& params);

/// Index of the smallest cost; ties keep the first.
std::size_t best_of(std::span<const double> costs);

/// Runs two_approx repeatedly and keeps the candidate with the smallest phi_eps.
CenterSet two_approx_boosted(const PointSet& ps, const ParamSet& params,
                             std::optional<std::size_t> repetitions, Rng& rng);

/**
 * Sublinear-time variant: each round samples n_prime points with
 * replacement and adds the take_per_round of them farthest from the
 * current selections. Per-round work depends on n_prime and the number of
 * selections only. Selections drawn twice stay in the working list (so
 * round cost is a fixed function of the round number); the returned set
 * is deduplicated.
 */
CenterSet sublinear_bicriteria(const PointSet& ps, const GreedyConfig& cfg, const SublinearConfig& sub,
                               Rng& rng, const RoundObserver& observer = {});

}  // namespace kcenter

#endif  // KCENTER_GREEDY_HPP
