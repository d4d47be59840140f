#include "corrbreak/kolmogorov.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "corrbreak/errors.hpp"

namespace corrbreak {

namespace {

constexpr double kTermTolerance = 1e-14;
constexpr double kThetaSwitch = 0.3;

double alternating_series(double x) {
    double sum = 0.0;
    const double x2 = x * x;
    for (int k = 1; k < 1'000'000; ++k) {
        const double term = std::exp(-2.0 * k * k * x2);
        sum += (k % 2 == 1) ? term : -term;
        if (term < kTermTolerance) {
            break;
        }
    }
    return 1.0 - 2.0 * sum;
}

double theta_series(double x) {
    constexpr double pi2 = std::numbers::pi * std::numbers::pi;
    double sum = 0.0;
    for (int k = 1; k < 1000; ++k) {
        const double odd = 2.0 * k - 1.0;
        const double term = std::exp(-odd * odd * pi2 / (8.0 * x * x));
        sum += term;
        if (term < kTermTolerance * sum || term == 0.0) {
            break;
        }
    }
    return std::sqrt(2.0 * std::numbers::pi) / x * sum;
}

}  // namespace

double kolmogorov_cdf(double x) {
    if (!(x > 0.0)) {
        return 0.0;
    }
    return x < kThetaSwitch ? theta_series(x) : alternating_series(x);
}

double critical_value(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw RangeError("significance level must lie in (0, 1), got " + std::to_string(alpha));
    }
    const double target = 1.0 - alpha;
    double lo = 0.3;
    double hi = 4.0;
    while (hi - lo >= 1e-10) {
        const double mid = 0.5 * (lo + hi);
        if (kolmogorov_cdf(mid) < target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double alpha_schedule(double alpha0, std::size_t k) {
    if (!(alpha0 > 0.0 && alpha0 < 1.0)) {
        throw RangeError("alpha0 must lie in (0, 1), got " + std::to_string(alpha0));
    }
    return -std::expm1(std::log1p(-alpha0) / static_cast<double>(k + 1));
}

}  // namespace corrbreak
