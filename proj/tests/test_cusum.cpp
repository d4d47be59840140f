#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "corrbreak/cusum.hpp"
#include "corrbreak/errors.hpp"
#include "corrbreak/lrv.hpp"
#include "oracles.hpp"

using namespace corrbreak;

TEST(IndexMaps, Eta) {
    EXPECT_EQ(eta(0.0, 100), 1u);
    EXPECT_EQ(eta(1.0, 100), 99u);
    EXPECT_EQ(eta(0.2804, 3524), 988u);
    EXPECT_EQ(eta(0.37, 100), 37u);  // 0.37 * 100 is 36.99999...
}

TEST(IndexMaps, Xi) {
    EXPECT_EQ(xi(0.3, 0.3, 100), 31u);
    EXPECT_EQ(xi(0.5, 0.0, 200), 100u);
    EXPECT_EQ(xi(0.5, 0.5, 1000), 501u);
}

TEST(IndexMaps, WindowEndReachesLastObservation) {
    EXPECT_EQ(window_end(1.0, 0.0, 100), 100u);
    EXPECT_EQ(window_end(0.5, 0.0, 100), 50u);
    EXPECT_EQ(window_end(0.5, 0.5, 100), 51u);
}

TEST(Profile, IncrementalEqualsFromScratch) {
    std::mt19937_64 gen(11);
    std::uniform_int_distribution<std::size_t> size(60, 400);
    for (int rep = 0; rep < 25; ++rep) {
        const std::size_t T = size(gen);
        const SeriesPair p = oracle::piecewise(T, {0.4}, {0.6, -0.2}, 500 + rep);
        std::uniform_int_distribution<std::size_t> pick(1, T);
        std::size_t a = pick(gen), b = pick(gen);
        if (a > b) std::swap(a, b);
        if (b - a < 30) {
            a = 1;
            b = T;
        }
        const auto prof = profile_window(p, a, b);
        const auto ref_d = oracle::dhat(p, prof.start, prof.end, oracle::log_bandwidth(prof.length()));
        EXPECT_NEAR(prof.dhat, ref_d.dhat, 1e-10 * ref_d.dhat);
        const auto ref = oracle::target(p, prof.start, prof.end, prof.grid.front(), prof.grid.back(),
                                        prof.dhat);
        ASSERT_EQ(ref.size(), prof.values.size());
        for (std::size_t i = 0; i < ref.size(); ++i) {
            EXPECT_NEAR(prof.values[i], ref[i], 1e-10 * std::max(1.0, ref[i]));
        }
    }
}

TEST(Profile, FullSampleStatisticIsQ) {
    for (unsigned s = 0; s < 5; ++s) {
        const SeriesPair p = oracle::piecewise(300, {0.5}, {0.5, 0.0}, s);
        const auto prof = profile(p, Interval{0, 1});
        EXPECT_EQ(prof.start, 1u);
        EXPECT_EQ(prof.end, 300u);
        EXPECT_NEAR(prof.statistic, oracle::q_full(p, prof.dhat), 1e-10);
        EXPECT_NEAR(full_sample_statistic(p), prof.statistic, 1e-14);
    }
}

TEST(Profile, RightEndIsZero) {
    const SeriesPair p = oracle::gaussian(200, 0.3, 4);
    const auto prof = profile(p, Interval{0.2, 0.9});
    EXPECT_NEAR(prof.values.back(), 0.0, 1e-15);
    EXPECT_GE(prof.statistic, 0.0);
}

TEST(Profile, HardBreakLocated) {
    int hits = 0;
    for (unsigned s = 0; s < 200; ++s) {
        const SeriesPair p = oracle::piecewise(300, {0.5}, {0.8, -0.8}, 1000 + s);
        const auto prof = profile(p, Interval{0, 1});
        hits += std::abs(prof.argmax_fraction() - 0.5) <= 0.05;
    }
    EXPECT_GE(hits, 190);
}

TEST(Profile, TieGoesToSmallestMaximizer) {
    // Symmetric profile with equal peaks at 0.25 and 0.75.
    EXPECT_EQ(first_argmax(std::vector<double>{0.1, 0.3, 0.2, 0.3, 0.0}), 1u);
    EXPECT_EQ(first_argmax(std::vector<double>{0.1, 0.2, 0.3, 0.4, 0.0}), 3u);

    CusumProfile p;
    p.T = 4;
    p.grid = {0, 1, 2, 3, 4};
    p.prefix_end = {2, 2, 2, 3, 4};
    p.values = {0.0, 0.5, 0.2, 0.5, 0.0};
    p.argmax = first_argmax(p.values);
    EXPECT_DOUBLE_EQ(p.argmax_fraction(), 0.25);
    EXPECT_EQ(estimate_changepoint(p), 2u);
}

TEST(Profile, Invariances) {
    const SeriesPair p = oracle::piecewise(400, {0.3}, {0.2, 0.7}, 21);
    std::vector<double> x, y;
    for (std::size_t t = 0; t < p.size(); ++t) {
        x.push_back(5.0 * p.x()[t] - 3.0);
        y.push_back(0.2 * p.y()[t] + 100.0);
    }
    const auto base = profile(p, Interval{0, 1});
    const auto moved = profile(SeriesPair(x, y), Interval{0, 1});
    const auto swapped = profile(p.swapped(), Interval{0, 1});
    EXPECT_NEAR(moved.statistic, base.statistic, 1e-8 * base.statistic);
    EXPECT_NEAR(swapped.statistic, base.statistic, 1e-12 * base.statistic);
    EXPECT_EQ(moved.argmax, base.argmax);
    EXPECT_EQ(swapped.argmax, base.argmax);
}

TEST(Profile, Errors) {
    const SeriesPair p = oracle::gaussian(100, 0.0, 1);
    EXPECT_THROW((void)profile(p, Interval{0.5, 0.4}), RangeError);
    EXPECT_THROW((void)profile(p, Interval{0.0, 0.1}), SegmentTooShort);
    EXPECT_THROW((void)profile_window(p, 0, 50), RangeError);
}

TEST(Profile, DegeneratePrefixContributesZero) {
    // The first five y values are constant, so the earliest prefixes have no variance.
    SeriesPair g = oracle::gaussian(60, 0.3, 2);
    std::vector<double> x(g.x().begin(), g.x().end()), y(g.y().begin(), g.y().end());
    for (int i = 0; i < 5; ++i) y[i] = 1.0;
    const auto prof = profile(SeriesPair(x, y), Interval{0, 1});
    EXPECT_GT(prof.degenerate_prefixes, 0u);
    EXPECT_EQ(prof.values[0], 0.0);
}
