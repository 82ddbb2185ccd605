#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "kcenter/coreset.hpp"
#include "kcenter/coreset_json.hpp"
#include "kcenter/greedy.hpp"
#include "kcenter/hosts.hpp"
#include "kcenter/instance.hpp"
#include "oracles.hpp"

using namespace kcenter;

namespace {

PlantedInstance planted(std::size_t inliers, std::size_t k, std::size_t outliers, std::uint64_t seed) {
    GeneratorSpec spec;
    spec.n_inliers = inliers;
    spec.k_true = k;
    spec.outliers = outliers;
    return generate(spec, seed);
}

void expect_valid_mapping(const WeightedCoreset& cs, const PointSet& ps) {
    ASSERT_EQ(cs.absorbed_by.size(), ps.size());
    std::vector<std::uint64_t> weight(ps.size(), 0);
    for (Index p = 0; p < ps.size(); ++p) {
        EXPECT_LE(ps.dist(p, cs.absorbed_by[p]), cs.meta.r_tilde + 1e-12);
        ++weight[cs.absorbed_by[p]];
    }
    for (const auto& e : cs.entries) {
        EXPECT_EQ(weight[e.index], e.weight);
    }
    EXPECT_EQ(cs.total_weight(), ps.size());
}

/// Moving every point by at most r shifts any z-excluded radius by at most r.
void expect_cost_sandwich(const WeightedCoreset& cs, const PointSet& ps, std::size_t k, std::size_t z, Rng& rng) {
    for (int h = 0; h < 20; ++h) {
        auto centers = oracle::random_subset(ps.size(), k, rng);
        double full = oracle::naive_phi(ps, centers, z, 0.0);
        double weighted = oracle::unit_copy_phi0(ps, cs.entries, centers, z);
        EXPECT_LE(std::abs(full - weighted), cs.meta.r_tilde + 1e-9);
    }
}

}  // namespace

TEST(CoresetKnownRho, WeightsSizesAndMapping) {
    auto inst = planted(480, 3, 20, 5);
    const auto n = inst.points.size();
    auto params = ParamSet::make(n, 3, 20, 1.0, 0.25, 0.5);
    CoresetOptions opts;
    opts.keep_assignment = true;
    Rng check(99);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Rng rng(seed);
        auto cs = coreset_known_rho(inst.points, params, 1.0, rng, opts);
        ASSERT_FALSE(cs.meta.fallback);
        EXPECT_EQ(cs.meta.algorithm, CoresetAlgorithm::alg4);
        EXPECT_EQ(cs.total_weight(), n);
        EXPECT_LE(cs.meta.far_count, 40u);
        EXPECT_EQ(cs.far_points().size(), cs.meta.far_count);
        for (const auto& f : cs.far_points()) {
            EXPECT_EQ(f.weight, 1u);
        }
        for (const auto& c : cs.center_entries()) {
            EXPECT_GT(c.weight, 0u);
        }
        const double c = 2.0 + 2.0 / (3 * 0.75) * std::log(4.0);
        const auto t = static_cast<std::size_t>(std::ceil(c * 12 / 0.75));
        auto cfg = make_greedy_config(params);
        EXPECT_LE(cs.meta.centers, cfg.init_sample + (t - 1) * cfg.per_round_sample);
        std::set<Index> distinct;
        for (const auto& e : cs.entries) {
            distinct.insert(e.index);
        }
        EXPECT_EQ(distinct.size(), cs.entries.size());
        expect_valid_mapping(cs, inst.points);
        expect_cost_sandwich(cs, inst.points, 3, 20, check);
    }
}

TEST(CoresetKnownRho, FallsBackWhenRoundsExceedN) {
    auto ps = oracle::line({0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
    auto params = ParamSet::make(10, 2, 1);
    Rng rng(1);
    auto cs = coreset_known_rho(ps, params, 1.0, rng);
    EXPECT_TRUE(cs.meta.fallback);
    EXPECT_EQ(cs.entries.size(), 10u);
    EXPECT_EQ(cs.meta.centers, 10u);
    EXPECT_EQ(cs.meta.far_count, 0u);
    EXPECT_EQ(cs.total_weight(), 10u);
    EXPECT_THROW(coreset_known_rho(ps, params, 0.0, rng), ArgumentError);
}

TEST(CoresetUnknownRho, RadiusShrinksAndFarBudget) {
    auto inst = planted(480, 3, 20, 6);
    const auto n = inst.points.size();
    Rng check(98);
    for (double mu : {0.25, 0.5}) {
        auto params = ParamSet::make(n, 3, 20, 1.0, 0.25, mu);
        CoresetOptions opts;
        opts.keep_assignment = true;
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            Rng rng(seed);
            auto cs = coreset_unknown_rho(inst.points, params, rng, opts);
            ASSERT_FALSE(cs.meta.fallback);
            EXPECT_EQ(cs.meta.algorithm, CoresetAlgorithm::alg5);
            EXPECT_LE(cs.meta.r_tilde, mu / 2.0 * cs.meta.r_phase1 + 1e-12);
            EXPECT_LE(cs.meta.far_count, 6u * 20u);
            EXPECT_EQ(cs.total_weight(), n);
            expect_valid_mapping(cs, inst.points);
            expect_cost_sandwich(cs, inst.points, 3, 20, check);
        }
    }
}

TEST(CoresetUnknownRho, FallbacksAndRoundCap) {
    auto small = oracle::line({0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11});
    Rng rng(1);
    auto cs = coreset_unknown_rho(small, ParamSet::make(12, 2, 2), rng);
    EXPECT_TRUE(cs.meta.fallback);
    EXPECT_EQ(cs.entries.size(), 12u);

    Rng gen(2);
    auto ps = oracle::random_points(400, 2, 10.0, gen);
    CoresetOptions opts;
    opts.max_rounds = 0;
    Rng rng2(3);
    auto capped = coreset_unknown_rho(ps, ParamSet::make(400, 2, 5, 1.0, 0.25, 0.1), rng2, opts);
    EXPECT_TRUE(capped.meta.cap_hit);
    EXPECT_TRUE(capped.meta.fallback);
    EXPECT_EQ(capped.total_weight(), 400u);
    EXPECT_GT(capped.meta.r_phase1, 0.0);
}

TEST(Coreset, ZeroRadiusCollapsesDuplicates) {
    std::vector<double> xs;
    for (int copy = 0; copy < 30; ++copy) {
        xs.insert(xs.end(), {0.0, 50.0, 100.0});
    }
    auto ps = oracle::line(xs);
    auto params = ParamSet::make(90, 3, 0);
    for (int which = 0; which < 2; ++which) {
        Rng rng(7);
        auto cs = which == 0 ? coreset_known_rho(ps, params, 1.0, rng) : coreset_unknown_rho(ps, params, rng);
        ASSERT_FALSE(cs.meta.fallback);
        EXPECT_DOUBLE_EQ(cs.meta.r_tilde, 0.0);
        ASSERT_EQ(cs.entries.size(), 3u);
        for (const auto& e : cs.entries) {
            EXPECT_EQ(e.weight, 30u);
        }
        EXPECT_EQ(cs.meta.far_count, 0u);
    }
}

TEST(Coreset, IdentityComposesToExactOptimum) {
    auto inst = planted(18, 2, 2, 3);
    auto params = ParamSet::make(20, 2, 2);
    auto cs = identity_coreset(inst.points, params);
    auto composed = compose_with_host(cs, inst.points, params, brute_force_host());
    EXPECT_DOUBLE_EQ(composed.eval.radius, oracle::exhaustive_opt(inst.points, 2, 2));
    EXPECT_EQ(composed.eval.excluded.size(), 2u);

    auto charikar = compose_with_host(cs, inst.points, params, charikar_host());
    EXPECT_LE(charikar.eval.radius, 3.0 * composed.eval.radius + 1e-9);

    auto other = oracle::line({0, 1});
    EXPECT_THROW(compose_with_host(cs, other, params, charikar_host()), ArgumentError);
}

TEST(CoresetJson, RoundTripAndErrors) {
    auto inst = planted(480, 3, 20, 8);
    auto params = ParamSet::make(500, 3, 20);
    CoresetOptions opts;
    opts.keep_assignment = true;
    Rng rng(4);
    auto cs = coreset_unknown_rho(inst.points, params, rng, opts);
    auto back = parse_coreset(dump_coreset(cs));
    EXPECT_EQ(back, cs);
    EXPECT_EQ(hash_coreset(back), hash_coreset(cs));

    auto lean = identity_coreset(oracle::line({1, 2}), ParamSet::make(2, 1, 0));
    EXPECT_EQ(parse_coreset(dump_coreset(lean)), lean);

    EXPECT_THROW(parse_coreset("{not json"), ArgumentError);
    EXPECT_THROW(parse_coreset(R"({"source_n": 3})"), ArgumentError);
    EXPECT_THROW(parse_coreset(R"({"source_n": 2, "entries": [{"index": 5, "weight": 1}], "meta": {}})"),
                 ArgumentError);
}

TEST(Coreset, HashTracksContent) {
    auto ps = oracle::line({0, 1, 2});
    auto cs = identity_coreset(ps, ParamSet::make(3, 1, 0));
    auto h = hash_coreset(cs);
    EXPECT_EQ(h, hash_coreset(identity_coreset(ps, ParamSet::make(3, 1, 0))));
    cs.entries[1].weight = 2;
    EXPECT_NE(h, hash_coreset(cs));
}

TEST(Coreset, AlgorithmNames) {
    for (auto a : {CoresetAlgorithm::alg4, CoresetAlgorithm::alg5, CoresetAlgorithm::uniform,
                   CoresetAlgorithm::distributed, CoresetAlgorithm::identity}) {
        EXPECT_EQ(coreset_algorithm_from_string(to_string(a)), a);
    }
    EXPECT_THROW(coreset_algorithm_from_string("alg9"), ArgumentError);
}

TEST(UniformSample, SizeBudgetAndDistinct) {
    Rng gen(5);
    auto ps = oracle::random_points(1000, 2, 10.0, gen);
    auto params = ParamSet::make(1000, 3, 50);
    Rng rng(1);
    auto s = uniform_sample(ps, params, 200, rng);
    EXPECT_EQ(s.indices.size(), 200u);
    EXPECT_EQ(s.z_prime, 20u);
    std::set<Index> distinct(s.indices.begin(), s.indices.end());
    EXPECT_EQ(distinct.size(), 200u);
    EXPECT_EQ(s.as_weighted().size(), 200u);
    EXPECT_EQ(total_weight(s.as_weighted()), 200u);

    Rng again(1);
    EXPECT_EQ(uniform_sample(ps, params, 200, again).indices, s.indices);
}

TEST(UniformSample, DefaultSizeAndErrors) {
    auto big = ParamSet::make(1'000'000, 3, 10'000);
    const double expected = 40.0 / (1.0 * 0.01) * 6.0 * std::log(6.0 / (0.01 * 0.25));
    EXPECT_EQ(default_uniform_sample_size(big, 2), static_cast<std::size_t>(std::ceil(expected)));
    EXPECT_EQ(default_uniform_sample_size(ParamSet::make(500, 3, 10), 2), 500u);

    auto ps = oracle::line({0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
    Rng rng(1);
    EXPECT_THROW(uniform_sample(ps, ParamSet::make(10, 1, 0), 5, rng), ArgumentError);
    EXPECT_THROW(uniform_sample(ps, ParamSet::make(10, 1, 1), 0, rng), ArgumentError);
    EXPECT_THROW(uniform_sample(ps, ParamSet::make(10, 1, 1), 11, rng), ArgumentError);
    EXPECT_THROW(uniform_sample(ps, ParamSet::make(10, 1, 4), 1, rng), ArgumentError);
}
