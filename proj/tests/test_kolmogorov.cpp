#include <cmath>

#include <gtest/gtest.h>

#include "corrbreak/errors.hpp"
#include "corrbreak/kolmogorov.hpp"

using namespace corrbreak;

namespace {

double brute_cdf(double x) {
    long double s = 0;
    for (long k = 1; k <= 1000000; ++k) {
        const long double term = std::exp(-2.0L * k * k * x * x);
        s += (k % 2 == 1 ? term : -term);
    }
    return static_cast<double>(1 - 2 * s);
}

}  // namespace

TEST(Kolmogorov, MatchesLongSeries) {
    for (const double x : {0.5, 0.8, 1.0, 1.358, 2.0}) {
        EXPECT_NEAR(kolmogorov_cdf(x), brute_cdf(x), 1e-12) << x;
    }
}

TEST(Kolmogorov, ContinuousAtSwitch) {
    EXPECT_NEAR(kolmogorov_cdf(0.3 - 1e-12), kolmogorov_cdf(0.3 + 1e-12), 1e-12);
    EXPECT_NEAR(kolmogorov_cdf(0.3), brute_cdf(0.3), 1e-10);
}

TEST(Kolmogorov, Limits) {
    EXPECT_EQ(kolmogorov_cdf(0.0), 0.0);
    EXPECT_EQ(kolmogorov_cdf(-1.0), 0.0);
    EXPECT_LT(kolmogorov_cdf(0.1), 1e-20);
    EXPECT_NEAR(kolmogorov_cdf(6.0), 1.0, 1e-15);
    double prev = 0;
    for (double x = 0.05; x < 3; x += 0.05) {
        const double v = kolmogorov_cdf(x);
        EXPECT_GE(v, prev);
        prev = v;
    }
}

TEST(Kolmogorov, CriticalValues) {
    EXPECT_NEAR(critical_value(0.05), 1.358, 0.001);
    for (const double p : {0.01, 0.025, 0.0253, 0.05, 0.1, 0.5}) {
        EXPECT_NEAR(kolmogorov_cdf(critical_value(p)), 1 - p, 1e-8) << p;
    }
    EXPECT_THROW((void)critical_value(0.0), RangeError);
    EXPECT_THROW((void)critical_value(1.0), RangeError);
}

TEST(Kolmogorov, AlphaSchedule) {
    EXPECT_DOUBLE_EQ(alpha_schedule(0.05, 0), 0.05);
    EXPECT_NEAR(alpha_schedule(0.05, 1), 1 - std::sqrt(0.95), 1e-15);
    EXPECT_NEAR(alpha_schedule(0.05, 2), 1 - std::cbrt(0.95), 1e-15);
    EXPECT_NEAR(alpha_schedule(0.05, 1), 0.0253, 5e-5);
    EXPECT_NEAR(alpha_schedule(0.05, 2), 0.0170, 5e-5);
    for (std::size_t k = 0; k < 6; ++k) {
        EXPECT_NEAR(std::pow(1 - alpha_schedule(0.05, k), k + 1.0), 0.95, 1e-14);
    }
}
