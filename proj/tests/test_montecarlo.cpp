#include <gtest/gtest.h>

#include <json.hpp>

#include "corrbreak/errors.hpp"
#include "corrbreak/montecarlo.hpp"
#include "corrbreak/rng.hpp"

using namespace corrbreak;

namespace {

Experiment small(std::size_t reps, std::size_t threads) {
    Experiment e = builtin_design("var1-single-break", {200}, {0.0});
    e.cells.resize(2);
    e.replications = reps;
    e.threads = threads;
    e.master_seed = 42;
    return e;
}

}  // namespace

TEST(Stats, MedianAndMad) {
    EXPECT_DOUBLE_EQ(median({3, 1, 2}), 2);
    EXPECT_DOUBLE_EQ(median({4, 1, 3, 2}), 2.5);
    EXPECT_TRUE(std::isnan(median({})));
    EXPECT_DOUBLE_EQ(median_abs_deviation({1, 2, 3, 4, 100}), 1);
}

TEST(MonteCarlo, ThreadCountDoesNotChangeResults) {
    const auto one = run(small(24, 1));
    const auto four = run(small(24, 4));
    EXPECT_TRUE(one.same_outcome(four));
    const auto again = run(small(24, 3));
    EXPECT_TRUE(one.same_outcome(again));
}

TEST(MonteCarlo, PrefixProperty) {
    const Experiment e10 = small(10, 2);
    const Experiment e20 = small(20, 2);
    const auto a = run_cell(e10.cells[0], e10);
    const auto b = run_cell(e20.cells[0], e20);
    for (std::size_t r = 0; r < a.size(); ++r) EXPECT_EQ(a[r], b[r]);
}

TEST(MonteCarlo, FrequenciesSumToOne) {
    const auto s = run(small(30, 0));
    for (const auto& c : s.cells) {
        double total = 0;
        for (const double f : c.frequencies) total += f;
        EXPECT_NEAR(total, 1.0, 1e-12);
        EXPECT_EQ(c.counts.size(), 3u);
        EXPECT_EQ(c.locations.size(), 1u);
        EXPECT_EQ(c.breaks, std::vector<double>{0.25});
    }
}

TEST(MonteCarlo, SingleReplicationMatchesDetect) {
    Experiment e = small(1, 1);
    e.cells.resize(1);
    const auto s = run(e);
    const auto pair = generate(with_seed(e.cells[0].generator, derive_seed(42, 0)));
    const auto r = detect(pair, e.segmentation);
    const auto& c = s.cells[0];
    EXPECT_EQ(c.counts[std::min<std::size_t>(r.changepoints.size(), 2)], 1u);
    if (r.changepoints.size() == 1) {
        EXPECT_DOUBLE_EQ(c.locations[0].median, r.fractions[0]);
        EXPECT_DOUBLE_EQ(c.locations[0].mad, 0.0);
    }
}

TEST(MonteCarlo, Designs) {
    for (const auto& name : builtin_design_names()) {
        const Experiment e = builtin_design(name);
        EXPECT_FALSE(e.cells.empty()) << name;
    }
    EXPECT_EQ(builtin_design("var1-null").cells.size(), 3u * 3u * 5u);
    EXPECT_EQ(builtin_design("dcc-two-breaks", {1000}).cells.size(), 3u);
    EXPECT_THROW((void)builtin_design("nope"), InputError);
}

TEST(MonteCarlo, Serializers) {
    const auto s = run(small(8, 1));
    const auto j = nlohmann::json::parse(summary_json(s));
    EXPECT_EQ(j["cells"].size(), 2u);
    EXPECT_EQ(j["cells"][0]["counts"].size(), 3u);
    const std::string csv = summary_csv(s);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
    EXPECT_NE(csv.find("freq_2plus"), std::string::npos);
}
