#include "corrbreak/lrv.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "corrbreak/errors.hpp"
#include "corrbreak/moments.hpp"

namespace corrbreak {

std::size_t HacConfig::bandwidth(std::size_t n) const {
    if (rule == Bandwidth::Fixed) {
        if (fixed_h < 1) {
            throw InputError("fixed bandwidth must be at least 1");
        }
        return fixed_h;
    }
    if (n < 3) {
        return 1;
    }
    const auto h = static_cast<std::size_t>(std::floor(std::log(static_cast<double>(n))));
    return std::max<std::size_t>(1, h);
}

std::size_t dhat_min_length(std::size_t n, const HacConfig& cfg) {
    return std::max<std::size_t>(cfg.bandwidth(n) + 1, 10);
}

std::vector<Vector5> demeaned_vectors(const SeriesPair& pair, std::size_t a, std::size_t b) {
    const SegmentMoments m = accumulate(pair, a, b);
    if (m.degenerate()) {
        throw DegenerateSegment("segment [" + std::to_string(a) + ", " + std::to_string(b) +
                                "] has zero variance");
    }
    const long double n = m.n;
    const double mxx = static_cast<double>(m.sum_xx / n);
    const double myy = static_cast<double>(m.sum_yy / n);
    const double mx = static_cast<double>(m.sum_x / n);
    const double my = static_cast<double>(m.sum_y / n);
    const double mxy = static_cast<double>(m.sum_xy / n);

    const auto x = pair.x();
    const auto y = pair.y();
    std::vector<Vector5> u;
    u.reserve(m.n);
    for (std::size_t t = a; t <= b; ++t) {
        const double xt = x[t - 1];
        const double yt = y[t - 1];
        Vector5 v;
        v << xt * xt - mxx, yt * yt - myy, xt - mx, yt - my, xt * yt - mxy;
        u.push_back(v);
    }
    return u;
}

DhatComponents assemble_dhat(const Matrix5& d1, double mu_x, double mu_y, double var_x,
                             double var_y, double cov_xy) {
    DhatComponents c;
    c.d1 = d1;
    c.mu_x = mu_x;
    c.mu_y = mu_y;

    // 0-based indices: D(0,2) is D_{1,13} and so on.
    const auto D = [&](int i, int j) { return d1(i - 1, j - 1); };
    const double mx = mu_x;
    const double my = mu_y;

    Matrix3& e = c.e;
    e(0, 0) = D(1, 1) - 4 * mx * D(1, 3) + 4 * mx * mx * D(3, 3);
    e(0, 1) = D(1, 2) - 2 * mx * D(2, 3) - 2 * my * D(1, 4) + 4 * mx * my * D(3, 4);
    e(1, 1) = D(2, 2) - 4 * my * D(2, 4) + 4 * my * my * D(4, 4);
    e(0, 2) = -my * D(1, 3) + 2 * mx * my * D(3, 3) - mx * D(1, 4) + 2 * mx * mx * D(3, 4) +
              D(1, 5) - 2 * mx * D(3, 5);
    e(1, 2) = -my * D(2, 3) + 2 * mx * my * D(4, 4) - mx * D(2, 4) + 2 * my * my * D(3, 4) +
              D(2, 5) - 2 * my * D(4, 5);
    e(2, 2) = my * my * D(3, 3) + 2 * mx * my * D(3, 4) - 2 * my * D(3, 5) + mx * mx * D(4, 4) +
              D(5, 5) - 2 * mx * D(4, 5);
    e(1, 0) = e(0, 1);
    e(2, 0) = e(0, 2);
    e(2, 1) = e(1, 2);

    const double sx = std::sqrt(var_x);
    const double sy = std::sqrt(var_y);
    c.d3 << -0.5 * cov_xy / sy / (sx * sx * sx), -0.5 * cov_xy / sx / (sy * sy * sy),
        1.0 / (sx * sy);

    c.f = (c.d3.transpose() * e).transpose();
    const double quad = c.f.dot(c.d3);
    if (!(quad > 0) || !std::isfinite(quad)) {
        throw NonPositiveVariance("long-run variance of the correlation is not positive");
    }
    c.dhat = 1.0 / std::sqrt(quad);
    return c;
}

DhatComponents dhat(const SeriesPair& pair, std::size_t a, std::size_t b, const HacConfig& cfg) {
    if (a < 1 || a > b || b > pair.size()) {
        throw RangeError("segment [" + std::to_string(a) + ", " + std::to_string(b) +
                         "] outside 1.." + std::to_string(pair.size()));
    }
    const std::size_t n = b - a + 1;
    const std::size_t gamma = cfg.bandwidth(n);
    if (n < dhat_min_length(n, cfg)) {
        throw SegmentTooShort("segment of length " + std::to_string(n) +
                              " is too short for the long-run variance");
    }

    std::vector<Vector5> v = demeaned_vectors(pair, a, b);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (auto& vt : v) {
        vt *= scale;
    }

    Matrix5 d1 = Matrix5::Zero();
    for (const auto& vt : v) {
        d1.noalias() += vt * vt.transpose();
    }
    for (std::size_t h = 1; h < gamma && h < n; ++h) {
        const double w = bartlett(static_cast<double>(h) / static_cast<double>(gamma));
        Matrix5 g = Matrix5::Zero();
        for (std::size_t t = h; t < n; ++t) {
            g.noalias() += v[t] * v[t - h].transpose();
        }
        d1 += w * (g + g.transpose());
    }

    const SegmentMoments m = accumulate(pair, a, b);
    DhatComponents c = assemble_dhat(d1, static_cast<double>(m.mean_x()),
                                     static_cast<double>(m.mean_y()),
                                     static_cast<double>(m.var_x()),
                                     static_cast<double>(m.var_y()),
                                     static_cast<double>(m.cov_xy()));
    c.n = n;
    c.bandwidth = gamma;
    return c;
}

}  // namespace corrbreak
