#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "wrapfs/benchmarks.hpp"
#include "wrapfs/error.hpp"
#include "wrapfs/metaheuristics.hpp"

using namespace wrapfs;

namespace {

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

void expect_history_non_increasing(const OptimizeResult& r) {
    ASSERT_FALSE(r.history.empty());
    for (std::size_t i = 1; i < r.history.size(); ++i) {
        EXPECT_LE(r.history[i].best_cost, r.history[i - 1].best_cost);
    }
    EXPECT_EQ(r.history.back().best_cost, r.best_cost);
}

void expect_in_unit_cube(const Position& p) {
    for (double x : p.coords) {
        EXPECT_GE(x, 0.0);
        EXPECT_LE(x, 1.0);
    }
}

}  // namespace

TEST(Binarize, Threshold) {
    EXPECT_EQ(binarize_position({{0.0, 0.0, 0.0}}).count(), 0u);
    EXPECT_EQ(binarize_position({{1.0, 1.0, 1.0}}).count(), 3u);
    EXPECT_EQ(binarize_position({{0.49, 0.5, 0.51}}).to_string(), "011");
}

TEST(Ica, ImperialistPower) {
    const auto p = ica_imperialist_power(std::vector<double>{1, 2, 3});
    ASSERT_EQ(p.size(), 3u);
    EXPECT_DOUBLE_EQ(p[0], 2.0 / 3.0);
    EXPECT_DOUBLE_EQ(p[1], 1.0 / 3.0);
    EXPECT_DOUBLE_EQ(p[2], 0.0);
    EXPECT_EQ(ica_imperialist_power(std::vector<double>{5, 5}), (std::vector<double>{0.5, 0.5}));
    EXPECT_EQ(ica_imperialist_power(std::vector<double>{0, 10}), (std::vector<double>{1.0, 0.0}));
}

TEST(Ica, TotalCost) {
    EXPECT_DOUBLE_EQ(ica_total_cost(1.0, std::vector<double>{2, 4}, 0.1), 1.3);
    EXPECT_DOUBLE_EQ(ica_total_cost(1.0, {}, 0.1), 1.0);
    EXPECT_DOUBLE_EQ(ica_total_cost(0.0, std::vector<double>{0}, 0.1), 0.0);
}

TEST(Ica, PossessionProbability) {
    EXPECT_EQ(ica_possession_probability(std::vector<double>{1, 3}), (std::vector<double>{1.0, 0.0}));
    const auto eq = ica_possession_probability(std::vector<double>{2, 2, 2});
    for (double v : eq) EXPECT_DOUBLE_EQ(v, 1.0 / 3.0);
    EXPECT_EQ(ica_possession_probability(std::vector<double>{5}), (std::vector<double>{1.0}));
}

TEST(Ica, ColonyAllocationSumsToColonyCount) {
    const std::vector<double> powers{2.0 / 3.0, 1.0 / 3.0, 0.0};
    const auto a = ica_colony_allocation(powers, 5);
    EXPECT_EQ(a, (std::vector<std::size_t>{3, 2, 0}));
    // round(5/3)*3 = 6 > 5: the residue is taken from the strongest.
    const auto b = ica_colony_allocation(std::vector<double>{1.0 / 3, 1.0 / 3, 1.0 / 3}, 5);
    EXPECT_EQ(b, (std::vector<std::size_t>{1, 2, 2}));
    const auto c = ica_colony_allocation(std::vector<double>{0.25, 0.25, 0.25, 0.25}, 6);
    EXPECT_EQ(c[0] + c[1] + c[2] + c[3], 6u);
}

TEST(Ica, SphereConvergence) {
    std::vector<double> best;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        IcaConfig cfg;
        cfg.seed = seed;
        const auto r = ica_optimize(benchmarks::sphere, 10, cfg);
        expect_history_non_increasing(r);
        expect_in_unit_cube(r.best_position);
        EXPECT_EQ(r.best_mask, binarize_position(r.best_position));
        best.push_back(r.best_cost);
    }
    EXPECT_LT(median(best), 0.05);
}

TEST(Ica, ConstantCostGivesFlatHistory) {
    IcaConfig cfg;
    cfg.seed = 4;
    const auto r = ica_optimize([](const Position&) { return 1.0; }, 5, cfg);
    EXPECT_EQ(r.best_cost, 1.0);
    for (const auto& h : r.history) EXPECT_EQ(h.best_cost, 1.0);
}

TEST(Ica, OneDimensionalTarget) {
    std::vector<double> coord;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        IcaConfig cfg;
        cfg.seed = seed;
        const auto r = ica_optimize([](const Position& p) { return std::abs(p.coords[0] - 1.0); }, 1, cfg);
        coord.push_back(r.best_position.coords[0]);
    }
    EXPECT_GE(median(coord), 0.9);
}

TEST(Ica, BudgetDeterminismAndBounds) {
    IcaConfig cfg;
    cfg.seed = 17;
    std::size_t calls = 0;
    const auto counting = [&](const Position& p) {
        ++calls;
        for (double x : p.coords) {
            EXPECT_GE(x, 0.0);
            EXPECT_LE(x, 1.0);
        }
        return benchmarks::sphere(p);
    };
    const auto a = ica_optimize(counting, 6, cfg);
    EXPECT_EQ(calls, a.evaluations);
    EXPECT_LE(a.evaluations, cfg.n_pop * (cfg.max_it + 1));
    EXPECT_EQ(a.history.size(), cfg.max_it + 1);
    const auto b = ica_optimize(benchmarks::sphere, 6, cfg);
    EXPECT_EQ(a, b);
    const auto shifted = [](const Position& p) {
        double s = 0.0;
        for (double x : p.coords) s += (x - 0.3) * (x - 0.3);
        return s;
    };
    const auto c = ica_optimize(shifted, 6, cfg);
    cfg.seed = 18;
    EXPECT_NE(ica_optimize(shifted, 6, cfg).best_position, c.best_position);
}

TEST(Ica, NoColonyBeatsItsImperialistAfterAnIteration) {
    IcaConfig cfg;
    cfg.seed = 23;
    cfg.n_pop = 30;
    std::size_t calls = 0;
    ica_optimize(benchmarks::sphere, 8, cfg, {}, [&](std::size_t, const std::vector<Empire>& empires) {
        ++calls;
        std::size_t countries = 0;
        for (const auto& e : empires) {
            countries += 1 + e.colonies.size();
            for (const auto& c : e.colonies) EXPECT_GE(c.cost, e.imperialist.cost);
        }
        EXPECT_EQ(countries, cfg.n_pop);
    });
    EXPECT_EQ(calls, cfg.max_it);
}

TEST(Ica, InvalidConfigThrowsBeforeEvaluating) {
    std::size_t calls = 0;
    const auto counting = [&](const Position&) { return ++calls, 0.0; };
    for (auto mutate : std::vector<std::function<void(IcaConfig&)>>{
             [](IcaConfig& c) { c.beta = 2.5; }, [](IcaConfig& c) { c.zeta = 1.0; },
             [](IcaConfig& c) { c.n_imp = 0; }, [](IcaConfig& c) { c.n_imp = c.n_pop; },
             [](IcaConfig& c) { c.phi = 2.0; }, [](IcaConfig& c) { c.revolution_rate = 1.5; }}) {
        IcaConfig cfg;
        mutate(cfg);
        EXPECT_THROW(ica_optimize(counting, 3, cfg), ConfigError);
    }
    EXPECT_THROW(ica_optimize(counting, 0, IcaConfig{}), std::invalid_argument);
    EXPECT_EQ(calls, 0u);
}

TEST(BaMove, ZeroFrequencyKeepsVelocity) {
    const Position x{{0.2, 0.4}}, best{{0.9, 0.9}};
    const std::vector<double> v{0.1, -0.1};
    const auto m = ba_move(x, v, best, 0.0, 2.0, 0.0);
    EXPECT_EQ(m.velocity, v);
    EXPECT_NEAR(m.position.coords[0], 0.3, 1e-15);
    EXPECT_NEAR(m.position.coords[1], 0.3, 1e-15);
}

TEST(BaMove, UnitFrequencyAndSign) {
    const Position x{{0.2}}, best{{0.6}};
    const std::vector<double> v{0.0};
    // f = 0 + (2 - 0) * 0.5 = 1
    const auto toward = ba_move(x, v, best, 0.0, 2.0, 0.5, true);
    EXPECT_NEAR(toward.velocity[0], 0.4, 1e-15);
    EXPECT_NEAR(toward.position.coords[0], 0.6, 1e-15);
    const auto away = ba_move(x, v, best, 0.0, 2.0, 0.5, false);
    EXPECT_NEAR(away.velocity[0], -0.4, 1e-15);
    EXPECT_EQ(away.position.coords[0], 0.0);  // clamped
}

TEST(BaMove, BestIsAFixedPoint) {
    const Position best{{0.3, 0.7, 0.5}};
    const std::vector<double> zero(3, 0.0);
    for (double beta : {0.0, 0.3, 1.0}) {
        for (bool toward : {true, false}) {
            const auto m = ba_move(best, zero, best, 0.0, 2.0, beta, toward);
            EXPECT_EQ(m.position, best);
            EXPECT_EQ(m.velocity, zero);
        }
    }
}

TEST(Ba, SphereConvergence) {
    std::vector<double> best;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        BaConfig cfg;
        cfg.seed = seed;
        const auto r = ba_optimize(benchmarks::sphere, 10, cfg);
        expect_history_non_increasing(r);
        expect_in_unit_cube(r.best_position);
        EXPECT_EQ(r.best_mask, binarize_position(r.best_position));
        best.push_back(r.best_cost);
    }
    EXPECT_LT(median(best), 0.05);
}

TEST(Ba, ConstantCostKeepsLoudnessNonIncreasing) {
    BaConfig cfg;
    cfg.seed = 2;
    std::vector<double> previous(cfg.n_pop, cfg.loudness_init);
    const auto r = ba_optimize([](const Position&) { return 3.5; }, 4, cfg, {},
                               [&](std::size_t, const std::vector<Bat>& bats) {
                                   for (std::size_t i = 0; i < bats.size(); ++i) {
                                       EXPECT_LE(bats[i].loudness, previous[i]);
                                       previous[i] = bats[i].loudness;
                                   }
                               });
    EXPECT_EQ(r.best_cost, 3.5);
    for (const auto& h : r.history) EXPECT_EQ(h.best_cost, 3.5);
}

TEST(Ba, LoudnessAndPulseRateStayInRange) {
    BaConfig cfg;
    cfg.seed = 6;
    std::vector<double> previous(cfg.n_pop, cfg.loudness_init);
    std::size_t calls = 0;
    ba_optimize(benchmarks::sphere, 10, cfg, {}, [&](std::size_t, const std::vector<Bat>& bats) {
        ++calls;
        ASSERT_EQ(bats.size(), cfg.n_pop);
        for (std::size_t i = 0; i < bats.size(); ++i) {
            EXPECT_LE(bats[i].loudness, previous[i]);
            EXPECT_GT(bats[i].loudness, 0.0);
            EXPECT_GE(bats[i].pulse_rate, 0.0);
            EXPECT_LE(bats[i].pulse_rate, cfg.pulse_rate_init);
            previous[i] = bats[i].loudness;
            expect_in_unit_cube(bats[i].position);
        }
    });
    EXPECT_EQ(calls, cfg.max_it);
}

TEST(Ba, NoDecayAndFastPulseGrowth) {
    BaConfig cfg;
    cfg.seed = 8;
    cfg.alpha = 1.0;
    cfg.gamma = 50.0;
    std::vector<Bat> last;
    ba_optimize(benchmarks::sphere, 5, cfg, {}, [&](std::size_t, const std::vector<Bat>& bats) { last = bats; });
    ASSERT_EQ(last.size(), cfg.n_pop);
    for (const auto& bat : last) {
        EXPECT_DOUBLE_EQ(bat.loudness, 0.9);
        EXPECT_NEAR(bat.pulse_rate, 0.6, 1e-12);
    }
}

TEST(Ba, BudgetAndDeterminism) {
    BaConfig cfg;
    cfg.seed = 12;
    std::size_t calls = 0;
    const auto a = ba_optimize([&](const Position& p) { return ++calls, benchmarks::sphere(p); }, 7, cfg);
    EXPECT_EQ(calls, a.evaluations);
    EXPECT_LE(a.evaluations, cfg.n_pop * (cfg.max_it + 1) + cfg.n_pop * cfg.max_it);
    EXPECT_EQ(a.history.size(), cfg.max_it + 1);
    EXPECT_EQ(a, ba_optimize(benchmarks::sphere, 7, cfg));
}

TEST(Ba, InvalidConfigThrows) {
    for (auto mutate : std::vector<std::function<void(BaConfig&)>>{
             [](BaConfig& c) { c.n_pop = 0; }, [](BaConfig& c) { c.loudness_init = 1.5; },
             [](BaConfig& c) { c.pulse_rate_init = -0.1; }, [](BaConfig& c) { c.f_max = -1.0; },
             [](BaConfig& c) { c.alpha = 0.0; }, [](BaConfig& c) { c.gamma = -1.0; }}) {
        BaConfig cfg;
        mutate(cfg);
        EXPECT_THROW(ba_optimize(benchmarks::sphere, 3, cfg), ConfigError);
    }
}

TEST(Benchmarks, KnownValues) {
    EXPECT_DOUBLE_EQ(benchmarks::sphere({{0.5, 0.5}}), 0.5);
    EXPECT_DOUBLE_EQ(benchmarks::onemax({{0.9, 0.1, 0.6}}), 1.0);
    EXPECT_DOUBLE_EQ(benchmarks::by_name("sphere")({{1.0}}), 1.0);
    EXPECT_THROW(benchmarks::by_name("rastrigin"), ConfigError);
}
