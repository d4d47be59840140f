#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "corrbreak/cusum.hpp"
#include "corrbreak/lrv.hpp"
#include "corrbreak/series.hpp"

namespace corrbreak {

struct SegmentationConfig {
    double alpha0 = 0.05;
    std::size_t n_min = 20;
    std::size_t max_changepoints = 0;  ///< 0 means T / n_min
    HacConfig hac;

    /// @throws InputError unless 0 < alpha0 < 1 and n_min >= 10.
    void validate() const;
};

enum class Step { Detect, Refine };

enum class TestStatus { Tested, TooShort, Degenerate, NonPositiveVariance };

/// One row of the iteration log: a test of the window [start, end].
struct IterationRecord {
    Step step = Step::Detect;
    std::size_t start = 0;
    std::size_t end = 0;
    std::size_t level = 0;  ///< k in alpha_k
    double alpha = 0.0;
    double critical_value = 0.0;
    double statistic = 0.0;
    bool significant = false;  ///< statistic > critical_value
    std::size_t candidate = 0;  ///< estimated change point; 0 when not tested
    TestStatus status = TestStatus::Tested;

    bool operator==(const IterationRecord&) const = default;
};

struct AlphaLevel {
    std::size_t k = 0;
    double alpha = 0.0;
    double critical_value = 0.0;

    bool operator==(const AlphaLevel&) const = default;
};

struct ChangePointReport {
    std::size_t T = 0;
    std::vector<std::size_t> changepoints;  ///< strictly increasing, each in [1, T - 1]
    std::vector<double> fractions;          ///< changepoints / T
    /// Pearson correlation per final segment; empty when the segment is degenerate.
    std::vector<std::optional<double>> segment_correlations;
    std::vector<IterationRecord> iterations;
    std::vector<AlphaLevel> alpha_schedule_used;
    std::size_t refinement_passes = 0;
    bool refinement_capped = false;

    bool operator==(const ChangePointReport&) const = default;
};

/// Observer for every computed profile, keyed by its index in the iteration log.
using ProfileSink = std::function<void(std::size_t iteration, const CusumProfile&)>;

/**
 * @brief Binary segmentation for changes in correlation.
 *
 *  1. Test the full sample at alpha0; stop if insignificant.
 *  2. Test every newly created segment of length >= n_min, left to right, at
 *     alpha_k with k the number of points accepted so far; split at each
 *     significant estimate and repeat until a round adds nothing.
 *  3. When more than one point was found, re-test each point on the window
 *     between its neighbours at alpha_kmax (kmax = largest count reached).
 *     Insignificant points are deleted and the pass restarts; significant
 *     ones move to the window's argmax. Repeats until a pass changes nothing,
 *     capped at 10 * l passes.
 *  4. Pearson correlation in each final segment.
 *
 * @throws InputError if T < 2 * n_min or the configuration is invalid.
 */
[[nodiscard]] ChangePointReport detect(const SeriesPair& pair, const SegmentationConfig& cfg = {},
                                       const ProfileSink& sink = {});

[[nodiscard]] const char* to_string(Step s) noexcept;
[[nodiscard]] const char* to_string(TestStatus s) noexcept;

}  // namespace corrbreak
