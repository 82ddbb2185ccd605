#include "kcenter/greedy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace kcenter {

double greedy_constant(std::size_t k, double eta) {
    if (!(eta > 0.0 && eta < 0.5)) {
        throw ArgumentError("eta must lie in (0, 1/2)");
    }
    if (k == 0) {
        throw ArgumentError("k must be at least 1");
    }
    return 2.0 + 2.0 / (static_cast<double>(k) * (1.0 - eta)) * std::log(1.0 / eta);
}

GreedyConfig make_greedy_config(const ParamSet& params, std::optional<std::size_t> t_override) {
    GreedyConfig cfg;
    cfg.params = params;
    cfg.c = greedy_constant(params.k, params.eta);
    const double log_inv_eta = std::log(1.0 / params.eta);
    if (t_override) {
        if (*t_override == 0) {
            throw ArgumentError("round count must be positive");
        }
        cfg.t = *t_override;
    } else {
        cfg.t = ceil_count(cfg.c * static_cast<double>(params.k) / (1.0 - params.eta));
    }
    cfg.per_round_sample = std::max<std::size_t>(1, ceil_count((1.0 + params.eps) / params.eps * log_inv_eta));
    cfg.init_sample = std::max<std::size_t>(1, ceil_count(1.0 / (1.0 - params.gamma) * log_inv_eta));
    return cfg;
}

SublinearConfig make_sublinear_config(const ParamSet& params) {
    if (params.z == 0) {
        throw ArgumentError("sublinear sampling needs z >= 1 (gamma > 0)");
    }
    const double eps = params.eps;
    SublinearConfig sub;
    sub.sigma = 2.0 / (1.0 + std::sqrt(1.0 + 4.0 * (1.0 + eps) / (3.0 * eps)));
    const double base = (1.0 + eps) * params.gamma;
    sub.n_prime = std::max<std::size_t>(
        1, ceil_count(3.0 / (sub.sigma * sub.sigma * base) * std::log(4.0 / params.eta)));
    sub.take_per_round = std::max<std::size_t>(
        1, ceil_count((1.0 + sub.sigma) * base * static_cast<double>(sub.n_prime)));
    if (sub.take_per_round > sub.n_prime) {
        throw ArgumentError("take_per_round exceeds n_prime");
    }
    return sub;
}

std::size_t outlier_window(std::size_t z, double eps, std::size_t n) {
    return std::min(n, std::max<std::size_t>(1, exclusion_count(z, eps)));
}

GreedyRun::GreedyRun(const PointSet& ps) : tracker_(ps), is_center_(ps.size(), 0) {}

void GreedyRun::add(Index p) {
    if (is_center_[p]) {
        return;
    }
    is_center_[p] = 1;
    centers_.add(p, round_);
    tracker_.add_center(p);
}

void GreedyRun::initial_sample(std::size_t count, Rng& rng) {
    round_ = 1;
    const std::size_t n = tracker_.size();
    for (std::size_t s = 0; s < count; ++s) {
        add(uniform_index(rng, n));
    }
}

bool GreedyRun::round(std::size_t window, std::size_t draws, Rng& rng) {
    if (all_covered()) {
        return false;
    }
    ++round_;
    auto candidates = farthest_m(tracker_, std::min(window, tracker_.size()));
    for (std::size_t s = 0; s < draws; ++s) {
        add(candidates[uniform_index(rng, candidates.size())]);
    }
    return true;
}

CenterSet bicriteria(const PointSet& ps, const GreedyConfig& cfg, Rng& rng, const RoundObserver& observer) {
    if (cfg.params.n != ps.size()) {
        throw ArgumentError("config was built for a different n");
    }
    DistanceCounter counter;
    GreedyRun run(ps);
    auto notify = [&] {
        if (observer) {
            observer({run.rounds_done(), run.centers().size(), counter.count(), run.tracker().mindist()});
            counter.reset();
        }
    };
    run.initial_sample(cfg.init_sample, rng);
    notify();
    const std::size_t window = outlier_window(cfg.params.z, cfg.params.eps, ps.size());
    for (std::size_t j = 2; j <= cfg.t; ++j) {
        if (!run.round(window, cfg.per_round_sample, rng)) {
            break;
        }
        notify();
    }
    return run.centers();
}

CenterSet two_approx(const PointSet& ps, const ParamSet& params, Rng& rng) {
    if (params.n != ps.size()) {
        throw ArgumentError("parameters were built for a different n");
    }
    GreedyRun run(ps);
    run.initial_sample(1, rng);
    const std::size_t window = outlier_window(params.z, params.eps, ps.size());
    for (std::size_t j = 2; j <= params.k; ++j) {
        // A zero-distance draw is only possible once the relaxed cost is already 0.
        if (!run.round(window, 1, rng)) {
            break;
        }
    }
    return run.centers();
}

std::size_t default_boost_repetitions(const ParamSet& params) {
    double ratio = (1.0 + params.eps) / params.eps;
    double reps = std::log(10.0) / (1.0 - params.gamma) * std::pow(ratio, static_cast<double>(params.k) - 1.0);
    if (!std::isfinite(reps) || reps > 1e9) {
        throw GuardError("boosting repetition count is too large");
    }
    return std::max<std::size_t>(1, ceil_count(reps));
}

std::size_t best_of(std::span<const double> costs) {
    if (costs.empty()) {
        throw ArgumentError("no candidates to choose from");
    }
    return static_cast<std::size_t>(std::min_element(costs.begin(), costs.end()) - costs.begin());
}

CenterSet two_approx_boosted(const PointSet& ps, const ParamSet& params,
                             std::optional<std::size_t> repetitions, Rng& rng) {
    std::size_t reps = repetitions ? *repetitions : default_boost_repetitions(params);
    if (reps == 0) {
        throw ArgumentError("repetitions must be positive");
    }
    CenterSet best;
    double best_cost = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < reps; ++r) {
        CenterSet candidate = two_approx(ps, params, rng);
        double cost = phi_eps(ps, candidate, params.z, params.eps).radius;
        if (cost < best_cost) {
            best_cost = cost;
            best = std::move(candidate);
        }
    }
    return best;
}

CenterSet sublinear_bicriteria(const PointSet& ps, const GreedyConfig& cfg, const SublinearConfig& sub,
                               Rng& rng, const RoundObserver& observer) {
    if (cfg.params.n != ps.size()) {
        throw ArgumentError("config was built for a different n");
    }
    if (sub.n_prime == 0 || sub.take_per_round > sub.n_prime) {
        throw ArgumentError("take_per_round exceeds n_prime");
    }
    const std::size_t n = ps.size();
    std::vector<Index> selections;
    std::vector<std::size_t> selected_round;
    DistanceCounter counter;
    auto notify = [&](std::size_t round) {
        if (observer) {
            observer({round, selections.size(), counter.count(), {}});
            counter.reset();
        }
    };

    for (std::size_t s = 0; s < cfg.init_sample; ++s) {
        selections.push_back(uniform_index(rng, n));
        selected_round.push_back(1);
    }
    notify(1);

    std::vector<Index> sample(sub.n_prime);
    std::vector<double> sample_dist(sub.n_prime);
    std::vector<std::size_t> order(sub.n_prime);
    for (std::size_t j = 2; j <= cfg.t; ++j) {
        for (auto& a : sample) {
            a = uniform_index(rng, n);
        }
        for (std::size_t i = 0; i < sample.size(); ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (Index e : selections) {
                best = std::min(best, ps.dist(sample[i], e));
            }
            sample_dist[i] = best;
        }
        // The take_per_round farthest sampled entries; the last one taken is r_hat.
        std::iota(order.begin(), order.end(), std::size_t{0});
        auto before = [&](std::size_t a, std::size_t b) {
            if (sample_dist[a] != sample_dist[b]) {
                return sample_dist[a] > sample_dist[b];
            }
            if (sample[a] != sample[b]) {
                return sample[a] < sample[b];
            }
            return a < b;
        };
        auto cut = order.begin() + static_cast<std::ptrdiff_t>(sub.take_per_round);
        std::partial_sort(order.begin(), cut, order.end(), before);
        for (auto it = order.begin(); it != cut; ++it) {
            selections.push_back(sample[*it]);
            selected_round.push_back(j);
        }
        notify(j);
    }

    CenterSet out;
    std::vector<char> seen(n, 0);
    for (std::size_t i = 0; i < selections.size(); ++i) {
        if (!seen[selections[i]]) {
            seen[selections[i]] = 1;
            out.add(selections[i], selected_round[i]);
        }
    }
    return out;
}

}  // namespace kcenter
