#include <cmath>

#include <gtest/gtest.h>

#include "corrbreak/errors.hpp"
#include "corrbreak/kolmogorov.hpp"
#include "corrbreak/segmentation.hpp"
#include "oracles.hpp"

using namespace corrbreak;

namespace {

void check_report(const ChangePointReport& r, const SegmentationConfig& cfg) {
    ASSERT_EQ(r.fractions.size(), r.changepoints.size());
    ASSERT_EQ(r.segment_correlations.size(), r.changepoints.size() + 1);
    for (std::size_t i = 0; i < r.changepoints.size(); ++i) {
        EXPECT_GE(r.changepoints[i], 1u);
        EXPECT_LT(r.changepoints[i], r.T);
        if (i > 0) EXPECT_LT(r.changepoints[i - 1], r.changepoints[i]);
        EXPECT_DOUBLE_EQ(r.fractions[i], static_cast<double>(r.changepoints[i]) / r.T);
    }
    for (const auto& it : r.iterations) {
        EXPECT_EQ(it.significant, it.status == TestStatus::Tested && it.statistic > it.critical_value);
        EXPECT_NEAR(it.alpha, alpha_schedule(cfg.alpha0, it.level), 1e-15);
        EXPECT_NEAR(it.critical_value, critical_value(it.alpha), 1e-12);
    }
    ASSERT_FALSE(r.iterations.empty());
    EXPECT_EQ(r.iterations.front().start, 1u);
    EXPECT_EQ(r.iterations.front().end, r.T);
}

}  // namespace

TEST(Detect, ConstantCorrelationHasOneIteration) {
    const SeriesPair p = oracle::gaussian(1000, 0.5, 3);
    const SegmentationConfig cfg;
    const auto r = detect(p, cfg);
    check_report(r, cfg);
    EXPECT_TRUE(r.changepoints.empty());
    EXPECT_EQ(r.iterations.size(), 1u);
    ASSERT_EQ(r.segment_correlations.size(), 1u);
    EXPECT_NEAR(*r.segment_correlations[0], oracle::pearson(p, 1, 1000), 1e-12);
}

TEST(Detect, SingleBreak) {
    const SeriesPair p = oracle::piecewise(1000, {0.5}, {0.8, -0.3}, 4);
    const SegmentationConfig cfg;
    const auto r = detect(p, cfg);
    check_report(r, cfg);
    ASSERT_EQ(r.changepoints.size(), 1u);
    EXPECT_NEAR(r.fractions[0], 0.5, 0.02);
    EXPECT_NEAR(*r.segment_correlations[0], oracle::pearson(p, 1, r.changepoints[0]), 1e-12);
    EXPECT_NEAR(*r.segment_correlations[1], oracle::pearson(p, r.changepoints[0] + 1, 1000), 1e-12);
    // Both halves were tested at alpha_1 and came out insignificant.
    ASSERT_GE(r.iterations.size(), 3u);
    EXPECT_EQ(r.iterations[1].level, 1u);
    EXPECT_FALSE(r.iterations[1].significant);
}

TEST(Detect, TwoBreaksWithRefinement) {
    const SeriesPair p = oracle::piecewise(2000, {0.25, 0.75}, {0.7, -0.2, 0.6}, 5);
    const SegmentationConfig cfg;
    const auto r = detect(p, cfg);
    check_report(r, cfg);
    ASSERT_EQ(r.changepoints.size(), 2u);
    EXPECT_NEAR(r.fractions[0], 0.25, 0.02);
    EXPECT_NEAR(r.fractions[1], 0.75, 0.02);
    EXPECT_GE(r.refinement_passes, 1u);
    EXPECT_FALSE(r.refinement_capped);
    bool refined = false;
    for (const auto& it : r.iterations) refined |= it.step == Step::Refine;
    EXPECT_TRUE(refined);
    // Every final point passed its last refinement test.
    for (const std::size_t c : r.changepoints) {
        bool seen = false;
        for (auto it = r.iterations.rbegin(); it != r.iterations.rend(); ++it) {
            if (it->step == Step::Refine && it->candidate == c) {
                EXPECT_TRUE(it->significant);
                seen = true;
                break;
            }
        }
        EXPECT_TRUE(seen);
    }
}

TEST(Detect, AffineAndSwapInvariance) {
    const SeriesPair p = oracle::piecewise(1200, {0.3, 0.7}, {0.6, 0.0, 0.6}, 6);
    std::vector<double> x, y;
    for (std::size_t t = 0; t < p.size(); ++t) {
        x.push_back(3.0 * p.x()[t] + 10.0);
        y.push_back(0.5 * p.y()[t] - 4.0);
    }
    const auto base = detect(p);
    const auto moved = detect(SeriesPair(x, y));
    const auto swapped = detect(p.swapped());
    EXPECT_EQ(moved.changepoints, base.changepoints);
    EXPECT_EQ(swapped.changepoints, base.changepoints);
    ASSERT_EQ(moved.iterations.size(), base.iterations.size());
    for (std::size_t i = 0; i < base.iterations.size(); ++i) {
        EXPECT_NEAR(moved.iterations[i].statistic, base.iterations[i].statistic,
                    1e-8 * std::max(1.0, base.iterations[i].statistic));
        EXPECT_EQ(moved.iterations[i].significant, base.iterations[i].significant);
    }
}

TEST(Detect, Deterministic) {
    const SeriesPair p = oracle::piecewise(800, {0.5}, {0.5, 0.0}, 7);
    EXPECT_EQ(detect(p), detect(p));
}

TEST(Detect, ProfileSinkSeesEveryTest) {
    const SeriesPair p = oracle::piecewise(800, {0.5}, {0.8, 0.0}, 8);
    std::vector<std::size_t> seen;
    const auto r = detect(p, {}, [&](std::size_t i, const CusumProfile& prof) {
        seen.push_back(i);
        EXPECT_GE(prof.length(), 20u);
    });
    std::size_t tested = 0;
    for (const auto& it : r.iterations) tested += it.status == TestStatus::Tested;
    EXPECT_EQ(seen.size(), tested);
    for (const std::size_t i : seen) {
        EXPECT_EQ(r.iterations.at(i).status, TestStatus::Tested);
    }
}

TEST(Detect, StoppingConditionHoldsOnFinalSegments) {
    const SeriesPair p = oracle::piecewise(1500, {0.4}, {0.6, -0.1}, 9);
    const auto r = detect(p);
    std::vector<std::size_t> bounds{0};
    bounds.insert(bounds.end(), r.changepoints.begin(), r.changepoints.end());
    bounds.push_back(r.T);
    for (std::size_t k = 0; k + 1 < bounds.size(); ++k) {
        const std::size_t a = bounds[k] + 1, b = bounds[k + 1];
        for (auto it = r.iterations.rbegin(); it != r.iterations.rend(); ++it) {
            if (it->step == Step::Detect && it->start == a && it->end == b) {
                EXPECT_FALSE(it->significant);
                break;
            }
        }
    }
}

TEST(Detect, InputErrors) {
    const SeriesPair p = oracle::gaussian(30, 0.0, 1);
    EXPECT_THROW((void)detect(p), InputError);
    SegmentationConfig bad;
    bad.alpha0 = 1.5;
    EXPECT_THROW((void)detect(oracle::gaussian(100, 0, 1), bad), InputError);
}

TEST(Detect, DegenerateSegmentIsLoggedNotFatal) {
    // A long constant stretch in y forces an untestable half after a break.
    SeriesPair g = oracle::piecewise(600, {0.5}, {0.9, 0.0}, 10);
    std::vector<double> x(g.x().begin(), g.x().end()), y(g.y().begin(), g.y().end());
    for (std::size_t t = 300; t < 600; ++t) y[t] = 2.0;
    ChangePointReport r;
    ASSERT_NO_THROW(r = detect(SeriesPair(x, y)));
    EXPECT_EQ(r.segment_correlations.size(), r.changepoints.size() + 1);
    if (!r.changepoints.empty() && r.changepoints.back() >= 300) {
        EXPECT_FALSE(r.segment_correlations.back().has_value());
    }
}

TEST(Detect, MaxChangepointsCap) {
    const SeriesPair p = oracle::piecewise(2000, {0.25, 0.5, 0.75}, {0.8, -0.5, 0.8, -0.5}, 11);
    SegmentationConfig cfg;
    cfg.max_changepoints = 1;
    const auto r = detect(p, cfg);
    EXPECT_LE(r.changepoints.size(), 1u);
}
