#include <gtest/gtest.h>

#include "cpjoint/error.hpp"
#include "cpjoint/mean_change.hpp"
#include "oracle/oracle.hpp"
#include "test_support.hpp"

namespace cpjoint {
namespace {

using testing::close;

TEST(MeanStatTest, IdenticalRowsGiveZero) {
    std::vector<double> v;
    for (int i = 0; i < 10; ++i) v.insert(v.end(), {3.0, -1.0, 2.5});
    const auto r = mean_stat_curve(ObservationView(10, 3, v));
    EXPECT_EQ(r.per_tau.tau_min, 2u);
    EXPECT_EQ(r.per_tau.tau_max, 8u);
    for (double m : r.per_tau.values) EXPECT_NEAR(m, 0.0, 1e-12);
    EXPECT_NEAR(r.aggregate, 0.0, 1e-11);
}

TEST(MeanStatTest, FourPointHandExample) {
    const std::vector<double> v = {0, 0, 1, 1};
    const ObservationView d(4, 1, v);
    EXPECT_DOUBLE_EQ(oracle::naive_mean_stat(d, 2), 1.0);
    const auto r = mean_stat_curve(d);
    ASSERT_EQ(r.per_tau.size(), 1u);
    EXPECT_DOUBLE_EQ(r.per_tau.at(2), 1.0);
}

TEST(MeanStatTest, MatchesOracleOnRandomData) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Dataset d = testing::random_dataset(12, 3, 100 + seed);
        const auto r = mean_stat_curve(d);
        for (std::size_t tau = 2; tau <= 10; ++tau) {
            const double want = oracle::naive_mean_stat(d, tau);
            EXPECT_TRUE(close(r.per_tau.at(tau), want, 1e-9)) << "seed " << seed << " tau " << tau;
        }
    }
}

TEST(MeanStatTest, AggregateIsWeightedSum) {
    const Dataset d = testing::random_dataset(30, 4, 7);
    const auto r = mean_stat_curve(d);
    double s = 0.0;
    for (std::size_t tau = 2; tau <= 28; ++tau) s += tau * (30.0 - tau) / 30.0 * r.per_tau.at(tau);
    EXPECT_TRUE(close(r.aggregate, s, 1e-10));
}

TEST(MeanStatTest, RejectsTinyN) {
    const std::vector<double> v = {1, 2, 3};
    EXPECT_THROW(mean_stat_curve(ObservationView(3, 1, v)), Error);
}

TEST(MeanStatTest, Invariances) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Dataset d = testing::random_dataset(25, 5, 300 + seed);
        const auto base = mean_stat_curve(d);
        const auto shifted = mean_stat_curve(testing::translated(d, testing::normal_values(1, 5, seed)));
        const auto rot = mean_stat_curve(testing::rotated(d, testing::random_orthogonal(5, seed)));
        const auto twice = mean_stat_curve(testing::scaled(d, 2.0));
        const auto rev = mean_stat_curve(testing::reversed(d));
        // Curve values can pass near zero, so tolerances are relative to the curve's scale.
        double scale = 0.0;
        for (double m : base.per_tau.values) scale = std::max(scale, std::abs(m));
        for (std::size_t tau = 2; tau <= 23; ++tau) {
            const double m = base.per_tau.at(tau);
            EXPECT_NEAR(shifted.per_tau.at(tau), m, 1e-8 * scale);
            EXPECT_NEAR(rot.per_tau.at(tau), m, 1e-8 * scale);
            EXPECT_EQ(twice.per_tau.at(tau), 4.0 * m);
            EXPECT_NEAR(rev.per_tau.at(25 - tau), m, 1e-10 * scale);
        }
        EXPECT_EQ(twice.aggregate, 4.0 * base.aggregate);
    }
}

// Coefficient of x_i' x_k (0-based, i < k) in the aggregate, by summing the per-split
// contributions of the three-block representation directly.
double brute_coefficient(std::size_t n, std::size_t i, std::size_t k) {
    double a = 0.0;
    const double nd = static_cast<double>(n);
    for (std::size_t tau = 2; tau <= n - 2; ++tau) {
        const double t = static_cast<double>(tau);
        const double w = t * (nd - t) / nd;
        if (k < tau) a += w * 2.0 / (t * (t - 1.0));
        else if (i >= tau) a += w * 2.0 / ((nd - t) * (nd - t - 1.0));
        else a -= w * 2.0 / (t * (nd - t));
    }
    return a;
}

TEST(MeanCoefficientsTest, EmptySumConvention) {
    EXPECT_DOUBLE_EQ(mean_coefficients(4)(0, 3), -0.5);
}

TEST(MeanCoefficientsTest, MatchesBruteForce) {
    for (std::size_t n : {4u, 5u, 9u, 17u}) {
        const auto a = mean_coefficients(n);
        for (std::size_t k = 1; k < n; ++k)
            for (std::size_t i = 0; i < k; ++i)
                EXPECT_NEAR(a(i, k), brute_coefficient(n, i, k), 1e-12) << n << " " << i << " " << k;
    }
}

TEST(MeanCoefficientsTest, RowsOfSymmetricExtensionSumToZero) {
    const auto a = mean_coefficients(10);
    for (std::size_t i = 0; i < 10; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < 10; ++j) {
            if (j == i) continue;
            s += i < j ? a(i, j) : a(j, i);
        }
        EXPECT_NEAR(s, 0.0, 1e-9) << i;
    }
}

TEST(MeanCoefficientsTest, ReproducesAggregate) {
    for (std::size_t n : {6u, 10u, 20u}) {
        const Dataset d = testing::random_dataset(std::max<std::size_t>(n, 8), 3, n);
        const ObservationView v(n, 3, d.values().subspan(0, n * 3));
        EXPECT_TRUE(close(oracle::coefficient_mean_aggregate(v), mean_stat_curve(v).aggregate, 1e-9));
    }
}

TEST(MeanCoefficientsTest, RejectsSmallN) {
    try {
        mean_coefficients(3);
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NTooSmall);
    }
}

}  // namespace
}  // namespace cpjoint
