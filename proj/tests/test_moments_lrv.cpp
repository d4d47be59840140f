#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "corrbreak/errors.hpp"
#include "corrbreak/lrv.hpp"
#include "corrbreak/moments.hpp"
#include "oracles.hpp"

using namespace corrbreak;

namespace {

SeriesPair random_pair(std::size_t T, unsigned seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> z;
    std::uniform_real_distribution<double> rho(-0.8, 0.8);
    const double r = rho(gen);
    std::vector<double> x(T), y(T);
    double px = 0, py = 0;
    for (std::size_t t = 0; t < T; ++t) {
        px = 0.4 * px + z(gen);
        py = 0.3 * py + r * px + z(gen);
        x[t] = 3.0 + 2.0 * px;
        y[t] = -1.0 + py;
    }
    return SeriesPair(std::move(x), std::move(y));
}

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST(Series, RejectsBadInput) {
    EXPECT_THROW(SeriesPair({1, 2}, {1}), InputError);
    EXPECT_THROW(SeriesPair({1}, {1}), InputError);
    EXPECT_THROW(SeriesPair({1, NAN}, {1, 2}), InputError);
    EXPECT_THROW(SeriesPair({1, 2}, {1, 2}, {"a"}), InputError);
    const SeriesPair p({1, 2}, {3, 4}, {"d1", "d2"});
    EXPECT_EQ(p.label(2), "d2");
    EXPECT_EQ(p.swapped().x()[0], 3);
}

TEST(Moments, MatchesTwoPass) {
    const SeriesPair p = random_pair(300, 1);
    for (auto [a, b] : {std::pair<std::size_t, std::size_t>{1, 300}, {17, 48}, {100, 101}}) {
        EXPECT_NEAR(pearson(accumulate(p, a, b)), oracle::pearson(p, a, b), 1e-12);
    }
}

TEST(Moments, MergedEqualsWhole) {
    const SeriesPair p = random_pair(200, 2);
    const auto m = accumulate(p, 1, 80).merged(accumulate(p, 81, 200));
    EXPECT_NEAR(pearson(m), pearson(accumulate(p, 1, 200)), 1e-14);
}

TEST(Moments, Errors) {
    const SeriesPair p({1, 2, 3, 4}, {1, 1, 1, 1});
    EXPECT_THROW((void)accumulate(p, 0, 2), RangeError);
    EXPECT_THROW((void)accumulate(p, 3, 2), RangeError);
    EXPECT_THROW((void)accumulate(p, 1, 5), RangeError);
    EXPECT_THROW((void)pearson(accumulate(p, 1, 4)), DegenerateSegment);
}

TEST(Moments, ScaledCopiesAreNotDegenerate) {
    // A correlation of two tiny-scaled series must still be computable.
    const SeriesPair base = oracle::gaussian(100, 0.3, 9);
    std::vector<double> x(base.x().begin(), base.x().end()), y(base.y().begin(), base.y().end());
    for (auto& v : x) v = 1e-2 * v + 1e2;
    const SeriesPair p(x, y);
    EXPECT_NEAR(pearson(accumulate(p, 1, 100)), oracle::pearson(base, 1, 100), 1e-8);
}

TEST(Lrv, Bandwidth) {
    const HacConfig cfg;
    EXPECT_EQ(cfg.bandwidth(2), 1u);
    EXPECT_EQ(cfg.bandwidth(20), 2u);
    EXPECT_EQ(cfg.bandwidth(3524), 8u);
    EXPECT_EQ(HacConfig::fixed(5).bandwidth(1000), 5u);
    EXPECT_EQ(dhat_min_length(100, cfg), 10u);
}

TEST(Lrv, Bartlett) {
    EXPECT_DOUBLE_EQ(bartlett(0), 1);
    EXPECT_DOUBLE_EQ(bartlett(-0.25), 0.75);
    EXPECT_DOUBLE_EQ(bartlett(1.5), 0);
}

TEST(Lrv, DemeanedVectorsExample) {
    // x = (1, 1, 2, 2), y = (1, 1, 0, 0) -> the centred moment vector of the
    // third observation is (1.5, -0.5, 0.5, -0.5, -0.5).
    const SeriesPair p({1, 1, 2, 2}, {1, 1, 0, 0});
    const auto u = demeaned_vectors(p, 1, 4);
    ASSERT_EQ(u.size(), 4u);
    Vector5 expect;
    expect << 1.5, -0.5, 0.5, -0.5, -0.5;
    EXPECT_LT((u[2] - expect).norm(), 1e-15);
    Vector5 sum = Vector5::Zero();
    for (const auto& v : u) sum += v;
    EXPECT_LT(sum.norm(), 1e-14);
}

TEST(Lrv, BandedEqualsDoubleSum) {
    for (unsigned s = 0; s < 20; ++s) {
        const SeriesPair p = random_pair(150 + 7 * s, 100 + s);
        const std::size_t a = 1 + 3 * s, b = p.size() - s;
        const auto got = dhat(p, a, b);
        const auto ref = oracle::dhat(p, a, b, oracle::log_bandwidth(b - a + 1));
        EXPECT_LT((got.d1 - ref.d1).norm() / ref.d1.norm(), 1e-10);
        EXPECT_LT((got.e - ref.e).norm() / ref.e.norm(), 1e-10);
        EXPECT_LT(rel(got.dhat, ref.dhat), 1e-10);
    }
}

TEST(Lrv, FixedBandwidthOneIsOuterProductSum) {
    const SeriesPair p = random_pair(120, 3);
    const auto got = dhat(p, 1, 120, HacConfig::fixed(1));
    Matrix5 ref = Matrix5::Zero();
    for (const auto& u : demeaned_vectors(p, 1, 120)) ref += u * u.transpose() / 120.0;
    EXPECT_LT((got.d1 - ref).norm(), 1e-12 * ref.norm());
}

TEST(Lrv, ClosedFormIidNormal) {
    // Population D1 of (X^2, Y^2, X, Y, XY) for standard bivariate normals.
    for (const double r : {0.0, 0.25, -0.6}) {
        Matrix5 d1 = Matrix5::Zero();
        d1(0, 0) = d1(1, 1) = 2;
        d1(0, 1) = d1(1, 0) = 2 * r * r;
        d1(0, 4) = d1(4, 0) = d1(1, 4) = d1(4, 1) = 2 * r;
        d1(2, 2) = d1(3, 3) = 1;
        d1(2, 3) = d1(3, 2) = r;
        d1(4, 4) = 1 + r * r;
        const auto c = assemble_dhat(d1, 0, 0, 1, 1, r);
        EXPECT_NEAR(c.dhat, 1.0 / (1.0 - r * r), 1e-12) << r;
    }
}

TEST(Lrv, EqualsJacobianForm) {
    const SeriesPair p = random_pair(200, 4);
    const auto c = dhat(p, 1, 200);
    Eigen::Matrix<double, 3, 5> J;
    J << 1, 0, -2 * c.mu_x, 0, 0, 0, 1, 0, -2 * c.mu_y, 0, 0, 0, -c.mu_y, -c.mu_x, 1;
    const Matrix3 e = J * c.d1 * J.transpose();
    EXPECT_LT((c.e - e).norm(), 1e-12 * e.norm());
}

TEST(Lrv, AffineAndSwapInvariance) {
    const SeriesPair p = random_pair(250, 5);
    std::vector<double> x, y;
    for (std::size_t t = 0; t < p.size(); ++t) {
        x.push_back(-4.0 * p.x()[t] + 7.0);
        y.push_back(0.01 * p.y()[t] - 2.0);
    }
    const double d = dhat(p, 1, 250).dhat;
    EXPECT_LT(rel(dhat(SeriesPair(x, y), 1, 250).dhat, d), 1e-8);
    EXPECT_LT(rel(dhat(p.swapped(), 1, 250).dhat, d), 1e-10);
}

TEST(Lrv, Errors) {
    const SeriesPair p = random_pair(50, 6);
    EXPECT_THROW((void)dhat(p, 1, 5), SegmentTooShort);
    const SeriesPair flat(std::vector<double>(30, 1.0), std::vector<double>(30, 2.0));
    EXPECT_THROW((void)dhat(flat, 1, 30), DegenerateSegment);
    Matrix5 zero = Matrix5::Zero();
    EXPECT_THROW((void)assemble_dhat(zero, 0, 0, 1, 1, 0.2), NonPositiveVariance);
}
