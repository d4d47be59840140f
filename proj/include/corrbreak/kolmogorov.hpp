#pragma once

#include <cstddef>

namespace corrbreak {

/**
 * @brief CDF of sup |B(t)| for a standard Brownian bridge B (Kolmogorov law).
 *
 * K(x) = 1 - 2 sum_{k>=1} (-1)^{k+1} exp(-2 k^2 x^2), truncated once a term
 * drops below 1e-14. Below x = 0.3 the alternating series cancels badly, so the
 * equivalent theta-function form sqrt(2 pi)/x sum exp(-(2k-1)^2 pi^2 / (8 x^2))
 * is summed instead. Returns 0 for x <= 0.
 */
[[nodiscard]] double kolmogorov_cdf(double x);

/// Quantile c with kolmogorov_cdf(c) = 1 - alpha, by bisection on [0.3, 4].
/// @throws RangeError unless 0 < alpha < 1.
[[nodiscard]] double critical_value(double alpha);

/// alpha_k = 1 - (1 - alpha0)^(1 / (k + 1)), so that k + 1 tests at level
/// alpha_k keep the family-wise level at alpha0.
[[nodiscard]] double alpha_schedule(double alpha0, std::size_t k);

}  // namespace corrbreak
