#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "corrbreak/lrv.hpp"
#include "corrbreak/series.hpp"

namespace corrbreak {

/// Sub-interval [l1, l2] of the unit interval, 0 <= l1 < l2 <= 1.
struct Interval {
    double l1 = 0.0;
    double l2 = 1.0;

    /// @throws RangeError unless 0 <= l1 < l2 <= 1.
    void validate() const;

    bool operator==(const Interval&) const = default;
};

/// floor(z * T), tolerant of z having been produced as j / T in floating point.
[[nodiscard]] std::size_t scaled_floor(double z, std::size_t T);
/// ceil(z * T) with the same tolerance.
[[nodiscard]] std::size_t scaled_ceil(double z, std::size_t T);

/// eta(z) = min(max(floor(zT), 1), T - 1).
[[nodiscard]] std::size_t eta(double z, std::size_t T);

/// xi(z) = max(eta(z), eta(l1) + 1).
[[nodiscard]] std::size_t xi(double z, double l1, std::size_t T);

/**
 * @brief Last observation of the data window for right endpoint l2.
 *
 * Equal to xi(l2) except that the upper clamp is T rather than T - 1, so the
 * window for l2 = 1 ends at the final observation.
 */
[[nodiscard]] std::size_t window_end(double l2, double l1, std::size_t T);

/// Sampled |A_T(z)| on a sub-interval together with its maximizer.
struct CusumProfile {
    Interval interval;
    std::size_t T = 0;
    std::size_t start = 0;  ///< eta(l1), first observation in the window
    std::size_t end = 0;    ///< last observation in the window

    std::vector<std::size_t> grid;        ///< numerators j of the grid fractions j / T
    std::vector<std::size_t> prefix_end;  ///< xi(j / T) for each grid point
    std::vector<double> values;           ///< |A_T(j / T)|

    double dhat = 0.0;
    double full_correlation = 0.0;  ///< rho over [start, end]
    std::size_t argmax = 0;         ///< position in grid of the smallest maximizer
    double statistic = 0.0;         ///< sqrt(end - start + 1) * max(values)
    std::size_t degenerate_prefixes = 0;

    [[nodiscard]] std::size_t length() const noexcept { return end - start + 1; }
    [[nodiscard]] double fraction(std::size_t pos) const {
        return static_cast<double>(grid[pos]) / static_cast<double>(T);
    }
    [[nodiscard]] double argmax_fraction() const { return fraction(argmax); }
};

/// Position of the first maximum; 0 for an empty span.
[[nodiscard]] std::size_t first_argmax(std::span<const double> values) noexcept;

/**
 * @brief Evaluates |A_T(z)| on every multiple of 1/T inside [l1, l2].
 *
 * Prefix correlations over [eta(l1), xi(z)] are updated incrementally, so the
 * profile costs O(n) correlations plus the O(n * gamma) normalizer. A prefix
 * with zero variance contributes the value 0.
 *
 * @throws SegmentTooShort when the window is shorter than min_length, and
 *         propagates DegenerateSegment / NonPositiveVariance from the normalizer.
 */
[[nodiscard]] CusumProfile profile(const SeriesPair& pair, const Interval& iv,
                                   const HacConfig& cfg = {}, std::size_t min_length = 20);

/// Profile over the 1-based inclusive window [a, b], i.e. l1 = a / T, l2 = b / T.
[[nodiscard]] CusumProfile profile_window(const SeriesPair& pair, std::size_t a, std::size_t b,
                                          const HacConfig& cfg = {},
                                          std::size_t min_length = 20);

/// Estimated change point index xi(z*) for the profile's smallest maximizer z*.
[[nodiscard]] std::size_t estimate_changepoint(const CusumProfile& p);

/// Full-sample statistic Q_T.
[[nodiscard]] double full_sample_statistic(const SeriesPair& pair, const HacConfig& cfg = {});

}  // namespace corrbreak
