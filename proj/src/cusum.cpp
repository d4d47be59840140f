#include "corrbreak/cusum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "corrbreak/errors.hpp"
#include "corrbreak/moments.hpp"

namespace corrbreak {

namespace {

// Fractions reach us as j / T; their product with T may land a few ulps below j.
constexpr double kGridSlack = 1e-9;

}  // namespace

void Interval::validate() const {
    if (!(l1 >= 0.0 && l1 < l2 && l2 <= 1.0)) {
        throw RangeError("interval [" + std::to_string(l1) + ", " + std::to_string(l2) +
                         "] is not a sub-interval of [0, 1]");
    }
}

std::size_t scaled_floor(double z, std::size_t T) {
    const double v = std::floor(z * static_cast<double>(T) + kGridSlack);
    return v <= 0 ? 0 : static_cast<std::size_t>(v);
}

std::size_t scaled_ceil(double z, std::size_t T) {
    const double v = std::ceil(z * static_cast<double>(T) - kGridSlack);
    return v <= 0 ? 0 : static_cast<std::size_t>(v);
}

std::size_t eta(double z, std::size_t T) {
    if (T < 2) {
        throw RangeError("eta needs T >= 2");
    }
    return std::clamp<std::size_t>(scaled_floor(z, T), 1, T - 1);
}

std::size_t xi(double z, double l1, std::size_t T) {
    return std::max(eta(z, T), eta(l1, T) + 1);
}

std::size_t window_end(double l2, double l1, std::size_t T) {
    const std::size_t top = std::min(scaled_floor(l2, T), T);
    return std::max(top, eta(l1, T) + 1);
}

std::size_t first_argmax(std::span<const double> values) noexcept {
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] > values[best]) {
            best = i;
        }
    }
    return best;
}

CusumProfile profile(const SeriesPair& pair, const Interval& iv, const HacConfig& cfg,
                     std::size_t min_length) {
    iv.validate();
    const std::size_t T = pair.size();

    CusumProfile p;
    p.interval = iv;
    p.T = T;
    p.start = eta(iv.l1, T);
    p.end = window_end(iv.l2, iv.l1, T);
    const std::size_t a = p.start;
    const std::size_t b = p.end;
    const std::size_t n = p.length();
    if (n < min_length) {
        throw SegmentTooShort("window [" + std::to_string(a) + ", " + std::to_string(b) +
                              "] has " + std::to_string(n) + " observations, need " +
                              std::to_string(min_length));
    }

    const SegmentMoments whole = accumulate(pair, a, b);
    p.full_correlation = pearson(whole);
    p.dhat = dhat(pair, a, b, cfg).dhat;

    const std::size_t lo = scaled_ceil(iv.l1, T);
    const std::size_t hi = std::min(scaled_floor(iv.l2, T), T);
    const auto x = pair.x();
    const auto y = pair.y();
    const double nn = static_cast<double>(n);

    p.grid.reserve(hi - lo + 1);
    p.prefix_end.reserve(hi - lo + 1);
    p.values.reserve(hi - lo + 1);

    SegmentMoments prefix;
    std::size_t covered = a - 1;  // last observation folded into `prefix`
    for (std::size_t j = lo; j <= hi; ++j) {
        const std::size_t e = std::max(std::min(j, b), a + 1);
        while (covered < e) {
            ++covered;
            prefix.add(x[covered - 1], y[covered - 1]);
        }
        double value = 0.0;
        if (prefix.degenerate()) {
            ++p.degenerate_prefixes;
        } else {
            const double weight = static_cast<double>(e - a + 1) / nn;
            value = p.dhat * weight * std::abs(pearson(prefix) - p.full_correlation);
        }
        p.grid.push_back(j);
        p.prefix_end.push_back(e);
        p.values.push_back(value);
    }

    p.argmax = first_argmax(p.values);
    p.statistic = std::sqrt(nn) * p.values[p.argmax];
    return p;
}

CusumProfile profile_window(const SeriesPair& pair, std::size_t a, std::size_t b,
                            const HacConfig& cfg, std::size_t min_length) {
    const std::size_t T = pair.size();
    if (a < 1 || a >= b || b > T) {
        throw RangeError("window [" + std::to_string(a) + ", " + std::to_string(b) +
                         "] outside 1.." + std::to_string(T));
    }
    const double dt = static_cast<double>(T);
    return profile(pair, Interval{static_cast<double>(a) / dt, static_cast<double>(b) / dt},
                   cfg, min_length);
}

std::size_t estimate_changepoint(const CusumProfile& p) {
    return p.prefix_end.at(p.argmax);
}

double full_sample_statistic(const SeriesPair& pair, const HacConfig& cfg) {
    return profile(pair, Interval{0.0, 1.0}, cfg, 0).statistic;
}

}  // namespace corrbreak
