#include "corrbreak/moments.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "corrbreak/errors.hpp"

namespace corrbreak {

namespace {

bool vanishing(long double var, long double mean_sq) {
    // Cancellation in E[X^2] - E[X]^2 leaves residue of order eps * E[X^2].
    const long double tol = 64 * std::numeric_limits<long double>::epsilon() * mean_sq;
    return !(var > tol);
}

}  // namespace

bool SegmentMoments::degenerate() const noexcept {
    if (n < 2) {
        return true;
    }
    return vanishing(var_x(), sum_xx / n) || vanishing(var_y(), sum_yy / n);
}

SegmentMoments accumulate(const SeriesPair& pair, std::size_t a, std::size_t b) {
    if (a < 1 || a > b || b > pair.size()) {
        throw RangeError("segment [" + std::to_string(a) + ", " + std::to_string(b) +
                         "] outside 1.." + std::to_string(pair.size()));
    }
    SegmentMoments m;
    const auto x = pair.x();
    const auto y = pair.y();
    for (std::size_t t = a; t <= b; ++t) {
        m.add(x[t - 1], y[t - 1]);
    }
    return m;
}

double pearson(const SegmentMoments& m) {
    if (m.degenerate()) {
        throw DegenerateSegment("correlation undefined: zero variance over " +
                                std::to_string(m.n) + " observations");
    }
    const long double r = m.cov_xy() / (std::sqrt(m.var_x()) * std::sqrt(m.var_y()));
    return static_cast<double>(r);
}

}  // namespace corrbreak
