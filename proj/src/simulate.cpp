#include "corrbreak/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>
#include <utility>

#include "corrbreak/errors.hpp"
#include "corrbreak/rng.hpp"

namespace corrbreak {

void BreakSchedule::validate(bool correlation) const {
    if (levels.size() != breaks.size() + 1) {
        throw InputError("a schedule with " + std::to_string(breaks.size()) + " breaks needs " +
                         std::to_string(breaks.size() + 1) + " levels");
    }
    double prev = 0.0;
    for (const double z : breaks) {
        if (!(z > prev && z < 1.0)) {
            throw InputError("schedule breaks must be strictly increasing inside (0, 1)");
        }
        prev = z;
    }
    for (const double v : levels) {
        if (!std::isfinite(v)) {
            throw InputError("schedule levels must be finite");
        }
        if (correlation && !(std::abs(v) < 1.0)) {
            throw InputError("correlation levels must lie in (-1, 1)");
        }
    }
}

std::size_t BreakSchedule::regime(double z) const noexcept {
    return static_cast<std::size_t>(std::upper_bound(breaks.begin(), breaks.end(), z) -
                                    breaks.begin());
}

double BreakSchedule::integral(double z) const noexcept {
    double total = 0.0;
    double left = 0.0;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        const double right = i < breaks.size() ? breaks[i] : 1.0;
        if (z <= left) {
            break;
        }
        total += levels[i] * (std::min(z, right) - left);
        left = right;
    }
    return total;
}

void Var1Spec::validate() const {
    if (!(std::abs(phi) < 1.0)) {
        throw InputError("VAR(1) coefficient must satisfy |phi| < 1");
    }
    if (T < 2) {
        throw InputError("sample size must be at least 2");
    }
    schedule.validate(true);
    if (mean_schedule) {
        mean_schedule->validate(false);
    }
}

void DccSpec::validate() const {
    for (const GarchParams* g : {&garch_x, &garch_y}) {
        if (!(g->omega > 0.0 && g->alpha >= 0.0 && g->beta >= 0.0 && g->alpha + g->beta < 1.0)) {
            throw InputError("GARCH parameters need omega > 0, alpha, beta >= 0, alpha + beta < 1");
        }
    }
    if (!(theta1 >= 0.0 && theta2 >= 0.0 && theta1 + theta2 < 1.0)) {
        throw InputError("correlation recursion needs theta1, theta2 >= 0 and theta1 + theta2 < 1");
    }
    if (psi_window < 1) {
        throw InputError("psi window must be at least 1");
    }
    if (T < 2) {
        throw InputError("sample size must be at least 2");
    }
    schedule.validate(true);
}

SeriesPair gen_var1(const Var1Spec& spec) {
    spec.validate();
    Rng rng(spec.seed);
    const double dt = static_cast<double>(spec.T);

    std::vector<double> x;
    std::vector<double> y;
    x.reserve(spec.T);
    y.reserve(spec.T);

    // Deviations from the mean start at their unconditional value, zero.
    double wx = 0.0;
    double wy = 0.0;
    const std::size_t total = spec.burn_in + spec.T;
    for (std::size_t s = 0; s < total; ++s) {
        const bool kept = s >= spec.burn_in;
        const double z = kept ? static_cast<double>(s - spec.burn_in + 1) / dt : 0.0;
        const double rho = spec.schedule.level_at(z);
        const double n1 = rng.normal();
        const double n2 = rng.normal();
        wx = spec.phi * wx + n1;
        wy = spec.phi * wy + rho * n1 + std::sqrt(1.0 - rho * rho) * n2;
        if (kept) {
            double mx = spec.mean[0];
            double my = spec.mean[1];
            if (spec.mean_schedule) {
                mx = my = spec.mean_schedule->level_at(z);
            }
            x.push_back(mx + wx);
            y.push_back(my + wy);
        }
    }
    return SeriesPair(std::move(x), std::move(y));
}

SeriesPair gen_dcc(const DccSpec& spec, DccDiagnostics* diag) {
    spec.validate();
    Rng rng(spec.seed);
    const double dt = static_cast<double>(spec.T);
    constexpr double kBound = 1.0 - 1e-6;

    const GarchParams& gx = spec.garch_x;
    const GarchParams& gy = spec.garch_y;
    double hx = gx.omega / (1.0 - gx.alpha - gx.beta);
    double hy = gy.omega / (1.0 - gy.alpha - gy.beta);
    // Lagged squares start at their expectation so the first step stays at the
    // unconditional variance.
    double x2_prev = hx;
    double y2_prev = hy;
    double r = spec.schedule.levels.front();

    std::deque<std::pair<double, double>> resid;
    std::vector<double> x;
    std::vector<double> y;
    x.reserve(spec.T);
    y.reserve(spec.T);

    const std::size_t total = spec.burn_in + spec.T;
    for (std::size_t s = 0; s < total; ++s) {
        const bool kept = s >= spec.burn_in;
        const double z = kept ? static_cast<double>(s - spec.burn_in + 1) / dt : 0.0;
        const double rho = spec.schedule.level_at(z);

        hx = gx.omega + gx.alpha * x2_prev + gx.beta * hx;
        hy = gy.omega + gy.alpha * y2_prev + gy.beta * hy;

        double psi = rho;
        if (spec.psi == PsiSource::Rolling && resid.size() == spec.psi_window) {
            double s12 = 0.0;
            double s11 = 0.0;
            double s22 = 0.0;
            for (const auto& [e1, e2] : resid) {
                s12 += e1 * e2;
                s11 += e1 * e1;
                s22 += e2 * e2;
            }
            if (s11 > 0.0 && s22 > 0.0) {
                psi = s12 / std::sqrt(s11 * s22);
            }
        }
        r = (1.0 - spec.theta1 - spec.theta2) * rho + spec.theta1 * r + spec.theta2 * psi;
        if (!(std::abs(r) < kBound)) {
            r = std::clamp(r, -kBound, kBound);
            if (diag != nullptr) {
                ++diag->clamped;
            }
        }

        const double n1 = rng.normal();
        const double n2 = rng.normal();
        const double e1 = n1;
        const double e2 = r * n1 + std::sqrt(1.0 - r * r) * n2;
        const double xt = std::sqrt(hx) * e1;
        const double yt = std::sqrt(hy) * e2;

        resid.emplace_back(e1, e2);
        if (resid.size() > spec.psi_window) {
            resid.pop_front();
        }
        x2_prev = xt * xt;
        y2_prev = yt * yt;
        if (kept) {
            x.push_back(xt);
            y.push_back(yt);
        }
    }
    return SeriesPair(std::move(x), std::move(y));
}

SeriesPair generate(const SimulationSpec& spec) {
    return std::visit(
        [](const auto& s) -> SeriesPair {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, Var1Spec>) {
                return gen_var1(s);
            } else {
                return gen_dcc(s);
            }
        },
        spec);
}

std::size_t sample_size(const SimulationSpec& spec) {
    return std::visit([](const auto& s) { return s.T; }, spec);
}

SimulationSpec with_seed(SimulationSpec spec, std::uint64_t seed) {
    std::visit([seed](auto& s) { s.seed = seed; }, spec);
    return spec;
}

const std::vector<double>& correlation_breaks(const SimulationSpec& spec) {
    return std::visit([](const auto& s) -> const std::vector<double>& { return s.schedule.breaks; },
                      spec);
}

double a_star(const BreakSchedule& g, double l1, double l2, double z) {
    const double g1 = g.integral(l1);
    return g.integral(z) - g1 - (z - l1) / (l2 - l1) * (g.integral(l2) - g1);
}

AStarProfile a_star_profile(const BreakSchedule& g, double l1, double l2,
                            std::size_t grid_size) {
    g.validate(false);
    if (!(l1 >= 0.0 && l1 < l2 && l2 <= 1.0)) {
        throw RangeError("A* needs 0 <= l1 < l2 <= 1");
    }
    if (grid_size < 2) {
        throw InputError("A* grid needs at least 2 points");
    }
    constexpr double kTol = 1e-12;

    AStarProfile out;
    out.l1 = l1;
    out.l2 = l2;
    out.grid.reserve(grid_size);
    out.values.reserve(grid_size);
    for (std::size_t i = 0; i < grid_size; ++i) {
        const double z = i + 1 == grid_size
                             ? l2
                             : l1 + (l2 - l1) * static_cast<double>(i) /
                                        static_cast<double>(grid_size - 1);
        out.grid.push_back(z);
        out.values.push_back(std::abs(a_star(g, l1, l2, z)));
    }

    // |A*| is piecewise linear with zeros at l1 and l2: its maxima are breaks of g.
    std::vector<std::pair<double, double>> candidates;
    for (const double z : g.breaks) {
        if (z > l1 && z < l2) {
            candidates.emplace_back(z, std::abs(a_star(g, l1, l2, z)));
        }
    }
    for (const auto& [z, v] : candidates) {
        out.max_value = std::max(out.max_value, v);
    }
    if (out.max_value <= kTol) {
        out.max_value = 0.0;
        out.shape = AStarShape::Constant;
        return out;
    }
    for (const auto& [z, v] : candidates) {
        if (v >= out.max_value - kTol) {
            out.maximizers.push_back(z);
        }
    }
    out.shape = out.maximizers.size() == 1 ? AStarShape::Unique : AStarShape::Multiple;
    return out;
}

}  // namespace corrbreak
