#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "corrbreak/series.hpp"

namespace corrbreak {

using Vector5 = Eigen::Matrix<double, 5, 1>;
using Matrix5 = Eigen::Matrix<double, 5, 5>;
using Vector3 = Eigen::Matrix<double, 3, 1>;
using Matrix3 = Eigen::Matrix<double, 3, 3>;

/// Kernel configuration for the long-run variance of the correlation estimator.
struct HacConfig {
    enum class Bandwidth { LogFloor, Fixed };

    Bandwidth rule = Bandwidth::LogFloor;
    std::size_t fixed_h = 1;  ///< used when rule == Fixed; must be >= 1

    /// max(1, floor(ln n)) under LogFloor, fixed_h otherwise.
    [[nodiscard]] std::size_t bandwidth(std::size_t n) const;

    static HacConfig fixed(std::size_t h) { return {Bandwidth::Fixed, h}; }
};

/// Bartlett weight: 1 - |x| on |x| <= 1, zero outside.
[[nodiscard]] inline double bartlett(double x) noexcept {
    const double ax = x < 0 ? -x : x;
    return ax <= 1.0 ? 1.0 - ax : 0.0;
}

/// Intermediate quantities of the normalizer, kept for diagnostics and tests.
struct DhatComponents {
    Matrix5 d1;         ///< kernel-weighted long-run covariance of V_t
    Matrix3 e;          ///< covariance of (sigma_x^2, sigma_y^2, sigma_xy)
    Vector3 d3;         ///< gradient of rho w.r.t. (sigma_x^2, sigma_y^2, sigma_xy)
    Vector3 f;          ///< d3' e
    double mu_x = 0;
    double mu_y = 0;
    std::size_t n = 0;
    std::size_t bandwidth = 0;
    double dhat = 0;    ///< (f . d3)^(-1/2)
};

/// Minimum admissible sub-sample length for dhat().
[[nodiscard]] std::size_t dhat_min_length(std::size_t n, const HacConfig& cfg);

/**
 * @brief Demeaned moment vectors (X^2, Y^2, X, Y, XY) over [a, b].
 *
 * Each component is centered by its own sub-sample mean, so every component
 * sums to zero over the segment.
 *
 * @throws RangeError for bad bounds, DegenerateSegment for b - a + 1 < 2 or a
 *         zero variance.
 */
[[nodiscard]] std::vector<Vector5> demeaned_vectors(const SeriesPair& pair, std::size_t a,
                                                    std::size_t b);

/**
 * @brief Normalizer D-hat of the correlation CUSUM on the sub-sample [a, b].
 *
 * D1 is accumulated as Gamma_0 + sum_{h<gamma} (1 - h/gamma)(Gamma_h + Gamma_h'),
 * which equals the full double sum because the Bartlett weight vanishes for
 * |t - u| >= gamma. Cost is O(n * gamma).
 *
 * @throws SegmentTooShort, DegenerateSegment, NonPositiveVariance
 */
[[nodiscard]] DhatComponents dhat(const SeriesPair& pair, std::size_t a, std::size_t b,
                                  const HacConfig& cfg = {});

/// Assembles E, D3, F and D-hat from a long-run covariance and the sub-sample moments.
/// Exposed so the delta-method step can be checked independently of the HAC sum.
[[nodiscard]] DhatComponents assemble_dhat(const Matrix5& d1, double mu_x, double mu_y,
                                           double var_x, double var_y, double cov_xy);

}  // namespace corrbreak
