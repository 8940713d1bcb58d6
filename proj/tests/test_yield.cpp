#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "platelim/cone_probe.hpp"
#include "platelim/yield.hpp"

using namespace platelim;

namespace {

const Vec2 kOrigin{0.0, 0.0};

YieldCriterion vm1() { return YieldCriterion::von_mises(StrengthField::constant(1.0)); }
YieldCriterion tresca1() { return YieldCriterion::tresca(StrengthField::constant(1.0)); }
YieldCriterion joh(double p, double m) {
    return YieldCriterion::johansen(StrengthField::constant(p), StrengthField::constant(m));
}

Kappa rotate(const Kappa& k, double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    // R' K R with R = [[c,-s],[s,c]]
    const double k11 = c * c * k[0] + s * s * k[1] + 2.0 * c * s * k[2];
    const double k22 = s * s * k[0] + c * c * k[1] - 2.0 * c * s * k[2];
    const double k12 = c * s * (k[1] - k[0]) + (c * c - s * s) * k[2];
    return {k11, k22, k12};
}

std::vector<YieldCriterion> all_criteria() { return {vm1(), tresca1(), joh(2.0, 1.0)}; }

}  // namespace

TEST(Yield, PiEvalPoints) {
    EXPECT_NEAR(pi_eval(vm1(), kOrigin, {1, 0, 0}), 2.0 / std::sqrt(3.0), 1e-12);
    EXPECT_NEAR(pi_eval(tresca1(), kOrigin, {1, -1, 0}), 1.0, 1e-12);
    EXPECT_NEAR(pi_eval(joh(2, 1), kOrigin, {1, 1, 0}), 4.0, 1e-12);
    for (const YieldCriterion& c : all_criteria()) EXPECT_EQ(pi_eval(c, kOrigin, {0, 0, 0}), 0.0);
}

TEST(Yield, PiEdgeClosedForms) {
    EXPECT_NEAR(pi_edge(vm1(), kOrigin, 1.0, {1, 0}), 2.0 / std::sqrt(3.0), 1e-12);
    EXPECT_NEAR(pi_edge(joh(2, 1), kOrigin, -3.0, {0, 1}), 3.0, 1e-12);
    EXPECT_EQ(pi_edge(tresca1(), kOrigin, 0.0, {1, 0}), 0.0);
    EXPECT_THROW(pi_edge(vm1(), kOrigin, 1.0, {1, 1}), std::invalid_argument);
}

TEST(Yield, PiEdgeMatchesRankOnePiEval) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (const YieldCriterion& crit : all_criteria()) {
        for (int i = 0; i < 8; ++i) {
            const double ang = u(rng);
            const Vec2 nu{std::cos(ang), std::sin(ang)};
            const double s = u(rng);
            const Kappa rank_one{s * nu.x * nu.x, s * nu.y * nu.y, s * nu.x * nu.y};
            const double edge = pi_edge(crit, kOrigin, s, nu);
            EXPECT_NEAR(edge, pi_eval(crit, kOrigin, rank_one), 1e-12);
            // independence of nu
            EXPECT_NEAR(edge, pi_edge(crit, kOrigin, s, {0.6, 0.8}), 1e-12);
        }
    }
}

TEST(Yield, HomogeneityConvexityFrameIndifference) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::uniform_real_distribution<double> tpos(0.01, 10.0);
    for (const YieldCriterion& crit : all_criteria()) {
        for (int i = 0; i < 200; ++i) {
            const Kappa k1{u(rng), u(rng), u(rng)};
            const Kappa k2{u(rng), u(rng), u(rng)};
            const double t = tpos(rng);
            const double p1 = pi_eval(crit, kOrigin, k1);
            const double p2 = pi_eval(crit, kOrigin, k2);
            const Kappa scaled{t * k1[0], t * k1[1], t * k1[2]};
            EXPECT_NEAR(pi_eval(crit, kOrigin, scaled), t * p1, 1e-12 * (1.0 + t * p1));
            const Kappa mid{0.5 * (k1[0] + k2[0]), 0.5 * (k1[1] + k2[1]), 0.5 * (k1[2] + k2[2])};
            EXPECT_LE(pi_eval(crit, kOrigin, mid), 0.5 * (p1 + p2) + 1e-12);
            EXPECT_NEAR(pi_eval(crit, kOrigin, rotate(k1, u(rng))), p1, 1e-10 * (1.0 + p1));
        }
    }
}

TEST(Yield, BruteForceOracleConvergence) {
    EXPECT_NEAR(brute_force_pi(vm1(), kOrigin, {1, 0, 0}, 100000), 2.0 / std::sqrt(3.0), 1e-3);
    EXPECT_NEAR(brute_force_pi(joh(2, 1), kOrigin, {1, 1, 0}, 10000), 4.0, 1e-3);
    for (const YieldCriterion& c : all_criteria())
        EXPECT_EQ(brute_force_pi(c, kOrigin, {0, 0, 0}, 17), 0.0);
}

TEST(Yield, BruteForceIsMonotoneLowerBound) {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (const YieldCriterion& crit : all_criteria()) {
        for (int i = 0; i < 20; ++i) {
            const Kappa k{u(rng), u(rng), u(rng)};
            const double exact = pi_eval(crit, kOrigin, k);
            double prev = 0.0;
            for (size_t n : {1u, 10u, 100u, 1000u, 20000u}) {
                const double est = brute_force_pi(crit, kOrigin, k, n);
                EXPECT_GE(est, prev - 1e-15);
                EXPECT_LE(est, exact + 1e-9);
                prev = est;
            }
            EXPECT_NEAR(prev, exact, 2e-3 * (1.0 + exact));
        }
    }
}

TEST(Yield, CoercivityBounds) {
    const std::vector<Vec2> grid{{0, 0}, {0.5, 0.25}, {1, 1}};
    const auto [a1, b1] = coercivity_bounds(vm1(), grid);
    EXPECT_GT(a1, 0.0);
    EXPECT_LE(a1, b1);
    // exact directional extremes of the von Mises ratio: sqrt(2/3) and
    // sqrt(2); the 64-direction sample brackets them from inside.
    EXPECT_GE(a1, std::sqrt(2.0 / 3.0) - 1e-12);
    EXPECT_LE(a1, std::sqrt(2.0 / 3.0) * 1.10);
    EXPECT_LE(b1, std::sqrt(2.0) + 1e-12);
    EXPECT_GE(b1, std::sqrt(2.0) * 0.90);

    YieldCriterion scaled = YieldCriterion::von_mises(StrengthField::constant(3.5));
    const auto [a2, b2] = coercivity_bounds(scaled, grid);
    EXPECT_NEAR(a2, 3.5 * a1, 1e-12);
    EXPECT_NEAR(b2, 3.5 * b1, 1e-12);

    const auto [a3, b3] = coercivity_bounds(joh(1.0, 1.0), grid);
    EXPECT_GT(a3, 0.0);
    EXPECT_LE(a3, b3);
}

TEST(Yield, ConeBlockShapes) {
    const ConeBlock vm = emit_cone_block(vm1(), kOrigin);
    EXPECT_EQ(vm.aux_count, 4);
    ASSERT_EQ(vm.soc_groups.size(), 1u);
    EXPECT_EQ(vm.soc_groups[0].size(), 4u);
    EXPECT_TRUE(vm.nonneg_aux.empty());
    EXPECT_EQ(vm.equalities.size(), 4u);

    const ConeBlock tr = emit_cone_block(tresca1(), kOrigin);
    EXPECT_EQ(tr.aux_count, 8);
    ASSERT_EQ(tr.soc_groups.size(), 1u);
    EXPECT_EQ(tr.soc_groups[0].size(), 3u);
    EXPECT_EQ(tr.nonneg_aux.size(), 4u);
    EXPECT_EQ(tr.equalities.size(), 6u);

    const ConeBlock jo = emit_cone_block(joh(2, 1), kOrigin);
    EXPECT_EQ(jo.aux_count, 6);
    EXPECT_EQ(jo.soc_groups.size(), 2u);
    EXPECT_EQ(jo.equalities.size(), 4u);

    YieldCriterion bad = YieldCriterion::von_mises(StrengthField::constant(-1.0));
    EXPECT_THROW(emit_cone_block(bad, kOrigin), std::invalid_argument);
}

TEST(Yield, StrengthFieldExpressionEvaluation) {
    YieldCriterion crit = YieldCriterion::von_mises(
        StrengthField::expression("(cos(16*pi/3*x1)+1)*(cos(6*pi*x2)+1)+1"));
    const double at_min = pi_eval(crit, {3.0 / 16.0, 0.1}, {1, 0, 0});
    const double at_max = pi_eval(crit, {0.0, 0.0}, {1, 0, 0});
    EXPECT_NEAR(at_min, 2.0 / std::sqrt(3.0), 1e-9);
    EXPECT_NEAR(at_max, 5.0 * 2.0 / std::sqrt(3.0), 1e-9);
}
