#pragma once

#include <cstddef>

#include "corrbreak/series.hpp"

namespace corrbreak {

/**
 * @brief Raw sufficient statistics of a contiguous segment.
 *
 * Sums are held in long double and centered moments are formed on read,
 * using population (divide-by-n) denominators throughout.
 */
struct SegmentMoments {
    std::size_t n = 0;
    long double sum_x = 0;
    long double sum_y = 0;
    long double sum_xx = 0;
    long double sum_yy = 0;
    long double sum_xy = 0;

    void add(double x, double y) noexcept {
        const long double lx = x;
        const long double ly = y;
        ++n;
        sum_x += lx;
        sum_y += ly;
        sum_xx += lx * lx;
        sum_yy += ly * ly;
        sum_xy += lx * ly;
    }

    /// Moments of the union of two disjoint segments.
    [[nodiscard]] SegmentMoments merged(const SegmentMoments& other) const noexcept {
        SegmentMoments m = *this;
        m.n += other.n;
        m.sum_x += other.sum_x;
        m.sum_y += other.sum_y;
        m.sum_xx += other.sum_xx;
        m.sum_yy += other.sum_yy;
        m.sum_xy += other.sum_xy;
        return m;
    }

    [[nodiscard]] long double mean_x() const noexcept { return sum_x / n; }
    [[nodiscard]] long double mean_y() const noexcept { return sum_y / n; }
    [[nodiscard]] long double var_x() const noexcept {
        return sum_xx / n - mean_x() * mean_x();
    }
    [[nodiscard]] long double var_y() const noexcept {
        return sum_yy / n - mean_y() * mean_y();
    }
    [[nodiscard]] long double cov_xy() const noexcept {
        return sum_xy / n - mean_x() * mean_y();
    }

    /// True when either variance is zero up to rounding of the raw sums.
    [[nodiscard]] bool degenerate() const noexcept;
};

/// Moments over 1-based inclusive [a, b]. @throws RangeError unless 1 <= a <= b <= T.
[[nodiscard]] SegmentMoments accumulate(const SeriesPair& pair, std::size_t a, std::size_t b);

/// Pearson correlation with population denominators.
/// @throws DegenerateSegment when n < 2 or either variance vanishes.
[[nodiscard]] double pearson(const SegmentMoments& m);

}  // namespace corrbreak
