#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "cpjoint/distributions.hpp"
#include "cpjoint/error.hpp"
#include "cpjoint/inference.hpp"
#include "cpjoint/simulation.hpp"
#include "test_support.hpp"

namespace cpjoint {
namespace {

Dataset change_data(std::uint64_t seed) {
    SimulationModel m;
    m.n = 80;
    m.p = 20;
    m.tau_star = 40;
    m.delta1 = 1.0;
    m.delta2 = 1.5;
    m.seed = seed;
    return gen_dataset(m);
}

TEST(DetectTest, ConstantRowsAreDegenerate) {
    std::vector<double> v;
    for (int i = 0; i < 20; ++i) v.insert(v.end(), {1.0, 2.0, 3.0});
    try {
        detect(Dataset(20, 3, v));
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DegenerateScale);
    }
}

TEST(DetectTest, OutcomeIsInternallyConsistent) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const Dataset d = seed % 2 ? change_data(seed) : testing::random_dataset(60, 15, seed);
        for (double alpha : {0.01, 0.05, 0.2}) {
            const TestOutcome t = detect(d, alpha);
            EXPECT_GT(t.p_mean, 0.0);
            EXPECT_LT(t.p_mean, 1.0);
            EXPECT_GT(t.p_cov, 0.0);
            EXPECT_LT(t.p_cov, 1.0);
            EXPECT_GE(t.t_n, 0.0);
            EXPECT_GT(t.p_combined, 0.0);
            EXPECT_LE(t.p_combined, 1.0);
            EXPECT_NEAR(t.z_mean, t.m_n / std::sqrt(t.sigma1_sq), 1e-12 * std::abs(t.z_mean) + 1e-300);
            const double t_from_p = fisher_combine({t.p_mean, t.p_cov});
            EXPECT_LE(std::abs(t.t_n - t_from_p), 1e-12 * std::max(t.t_n, 1.0));
            EXPECT_EQ(t.reject, t.p_combined <= alpha);
            EXPECT_EQ(t.reject, t.t_n > chi2_4_quantile(alpha));
        }
    }
}

TEST(DetectTest, StrongSignalKeepsEverythingFinite) {
    SimulationModel m;
    m.n = 100;
    m.p = 30;
    m.tau_star = 50;
    m.delta1 = 40.0;
    m.delta2 = 10.0;
    m.seed = 3;
    const TestOutcome t = detect(gen_dataset(m));
    EXPECT_TRUE(std::isfinite(t.t_n));
    EXPECT_GT(t.t_n, 1000.0);
    EXPECT_TRUE(t.reject);
    EXPECT_GT(t.p_mean, 0.0);
    EXPECT_NEAR(t.t_n, -2.0 * t.log_p_mean - 2.0 * t.log_p_cov, 1e-12 * t.t_n);
}

TEST(DetectTest, Deterministic) {
    const Dataset d = change_data(11);
    const TestOutcome a = detect(d);
    const TestOutcome b = detect(d);
    EXPECT_EQ(a.t_n, b.t_n);
    EXPECT_EQ(a.m_n, b.m_n);
    EXPECT_EQ(a.v_n, b.v_n);
}

TEST(DetectTest, RejectsBadAlpha) {
    const Dataset d = testing::random_dataset(20, 3, 1);
    EXPECT_THROW(detect(d, 0.0), Error);
    EXPECT_THROW(detect(d, 1.0), Error);
}

TEST(LocalizeTest, GridAndProfileShape) {
    const Dataset d = change_data(5);
    const LocalizationOutcome loc = localize(d, 0.2);
    EXPECT_EQ(loc.grid_lo, 16u);
    EXPECT_EQ(loc.grid_hi, 64u);
    EXPECT_EQ(loc.profile.size(), loc.grid_hi - loc.grid_lo + 1);
    EXPECT_GE(loc.tau_hat, loc.grid_lo);
    EXPECT_LE(loc.tau_hat, loc.grid_hi);
    for (double v : loc.profile.values) EXPECT_GE(v, 0.0);
    const auto best = testing::maximizers(loc.profile.values, loc.grid_lo);
    EXPECT_EQ(loc.tau_hat, best.front());
}

TEST(LocalizeTest, GridClampsToValidRange) {
    const Dataset d = testing::random_dataset(10, 3, 2);
    const LocalizationOutcome small = localize(d, 0.05);
    EXPECT_EQ(small.grid_lo, 4u);
    EXPECT_EQ(small.grid_hi, 6u);
    const LocalizationOutcome wide = localize(d, 0.49);
    EXPECT_EQ(wide.grid_lo, 4u);
    EXPECT_EQ(wide.grid_hi, 6u);
    for (double bad : {0.0, 0.5, 0.7, -0.1}) {
        try {
            localize(d, bad);
            ADD_FAILURE();
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::BadParam);
        }
    }
}

TEST(LocalizeTest, ReversalMapsMaximizers) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Dataset d = change_data(100 + seed);
        const LocalizationOutcome fwd = localize(d);
        const LocalizationOutcome bwd = localize(testing::reversed(d));
        auto mapped = testing::maximizers(fwd.profile.values, fwd.grid_lo);
        for (auto& t : mapped) t = d.n() - t;
        std::sort(mapped.begin(), mapped.end());
        EXPECT_EQ(testing::maximizers(bwd.profile.values, bwd.grid_lo), mapped) << seed;
    }
}

TEST(LocalizeTest, ScaleInvariantArgmax) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Dataset d = change_data(200 + seed);
        const std::size_t tau = localize(d).tau_hat;
        for (double c : {0.1, 1.0, 7.0, 100.0}) {
            EXPECT_EQ(localize(testing::scaled(d, c)).tau_hat, tau) << seed << " c=" << c;
        }
    }
}

TEST(BaselinesTest, RulesFollowThePValues) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Dataset d = change_data(300 + seed);
        const Analysis a = analyze(d, 0.05, 0.2);
        const auto& b = a.baselines;
        ASSERT_EQ(b.size(), 4u);
        EXPECT_EQ(b[0].method, Method::Fisher);
        EXPECT_EQ(b[0].reject, a.test.reject);
        EXPECT_EQ(b[0].tau_hat, a.localization.tau_hat);
        EXPECT_EQ(b[1].reject, std::min(a.test.p_mean, a.test.p_cov) <= 0.025);
        EXPECT_EQ(b[2].reject, a.test.p_mean <= 0.05);
        EXPECT_EQ(b[3].reject, a.test.p_cov <= 0.05);

        std::vector<double> mean_stat, cov_stat;
        for (double lp : a.profiles.mean_log_p) mean_stat.push_back(-2.0 * lp);
        for (double lp : a.profiles.cov_log_p) cov_stat.push_back(-2.0 * lp);
        EXPECT_EQ(*b[2].tau_hat, a.profiles.grid_lo + first_argmax(mean_stat));
        EXPECT_EQ(*b[3].tau_hat, a.profiles.grid_lo + first_argmax(cov_stat));
        EXPECT_EQ(*b[1].tau_hat, a.test.log_p_mean <= a.test.log_p_cov ? *b[2].tau_hat : *b[3].tau_hat);

        const auto via_api = baselines(d, 0.05, 0.2);
        for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(via_api[k].tau_hat, b[k].tau_hat);
    }
}

TEST(BaselinesTest, MinPTieGoesToMean) {
    EXPECT_EQ(select_min_p(-3.0, -3.0, 10, 20), 10u);
    EXPECT_EQ(select_min_p(-2.0, -3.0, 10, 20), 20u);
    EXPECT_EQ(select_min_p(-4.0, -3.0, 10, 20), 10u);
}

TEST(ArgmaxTest, FirstOfTies) {
    EXPECT_EQ(first_argmax({1.0, 3.0, 2.0, 3.0}), 1u);
    EXPECT_EQ(first_argmax({5.0}), 0u);
}

}  // namespace
}  // namespace cpjoint
