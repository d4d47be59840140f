#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "corrbreak/series.hpp"

namespace corrbreak {

/**
 * @brief Step function g on [0, 1].
 *
 * `breaks` holds the interior boundaries z_1 < ... < z_l; `levels` holds the
 * l + 1 regime values. Regime i covers [z_i, z_{i+1}), the last regime
 * includes z = 1.
 */
struct BreakSchedule {
    std::vector<double> breaks;
    std::vector<double> levels{0.0};

    static BreakSchedule constant(double level) { return {{}, {level}}; }

    /// @throws InputError for unordered or out-of-range breaks, a size mismatch,
    ///         non-finite levels, or |level| >= 1 when `correlation` is set.
    void validate(bool correlation) const;

    [[nodiscard]] std::size_t regime(double z) const noexcept;
    [[nodiscard]] double level_at(double z) const noexcept { return levels[regime(z)]; }
    /// Integral of g over [0, z].
    [[nodiscard]] double integral(double z) const noexcept;

    bool operator==(const BreakSchedule&) const = default;
};

/// (X_t, Y_t) - mu = phi ((X_{t-1}, Y_{t-1}) - mu) + eps_t with unit-variance
/// Gaussian innovations whose correlation follows `schedule` at t / T.
struct Var1Spec {
    double phi = 0.0;
    std::array<double, 2> mean{0.5, 0.5};
    BreakSchedule schedule = BreakSchedule::constant(0.0);
    /// Common mean level of both series; overrides `mean` when present.
    std::optional<BreakSchedule> mean_schedule;
    std::size_t T = 1000;
    std::uint64_t seed = 1;
    std::size_t burn_in = 200;

    void validate() const;
    bool operator==(const Var1Spec&) const = default;
};

struct GarchParams {
    double omega = 1e-4;
    double alpha = 0.1;
    double beta = 0.85;

    bool operator==(const GarchParams&) const = default;
};

/// What feeds the theta2 term of the correlation recursion.
enum class PsiSource {
    Target,   ///< the regime level rho itself, so R_t is a smoothed copy of the schedule
    Rolling,  ///< uncentered correlation of the last psi_window standardized residuals
};

/**
 * GARCH(1,1) marginals with a Tse-Tsui conditional correlation recursion
 *   R_t = (1 - theta1 - theta2) rho + theta1 R_{t-1} + theta2 psi_{t-1}.
 */
struct DccSpec {
    GarchParams garch_x{1e-4, 0.1, 0.85};
    GarchParams garch_y{1e-4, 0.15, 0.8};
    double theta1 = 0.95;
    double theta2 = 0.03;
    PsiSource psi = PsiSource::Target;
    std::size_t psi_window = 2;  ///< used with PsiSource::Rolling
    BreakSchedule schedule = BreakSchedule::constant(0.0);
    std::size_t T = 1000;
    std::uint64_t seed = 1;
    std::size_t burn_in = 200;

    void validate() const;
    bool operator==(const DccSpec&) const = default;
};

using SimulationSpec = std::variant<Var1Spec, DccSpec>;

struct DccDiagnostics {
    std::size_t clamped = 0;  ///< steps where R_t left (-1, 1) and was clamped
};

[[nodiscard]] SeriesPair gen_var1(const Var1Spec& spec);
[[nodiscard]] SeriesPair gen_dcc(const DccSpec& spec, DccDiagnostics* diag = nullptr);
[[nodiscard]] SeriesPair generate(const SimulationSpec& spec);

[[nodiscard]] std::size_t sample_size(const SimulationSpec& spec);
[[nodiscard]] SimulationSpec with_seed(SimulationSpec spec, std::uint64_t seed);
/// Interior correlation breaks of the generating schedule.
[[nodiscard]] const std::vector<double>& correlation_breaks(const SimulationSpec& spec);

/// Plain-text `key = value` form of a simulation spec; parse_config inverts it.
[[nodiscard]] std::string to_config(const SimulationSpec& spec);
/// @throws InputError naming the offending line.
[[nodiscard]] SimulationSpec parse_config(std::string_view text);

enum class AStarShape { Constant, Unique, Multiple };

struct AStarProfile {
    double l1 = 0.0;
    double l2 = 1.0;
    std::vector<double> grid;
    std::vector<double> values;       ///< |A*(z)| on the grid
    std::vector<double> maximizers;   ///< exact global maximizers, ascending
    double max_value = 0.0;
    AStarShape shape = AStarShape::Constant;
};

/// |A*(z)| = |int_{l1}^z g - (z - l1)/(l2 - l1) int_{l1}^{l2} g| evaluated in
/// closed form. Its maxima sit on breaks of g, so maximizers are taken from
/// those rather than from the grid.
[[nodiscard]] AStarProfile a_star_profile(const BreakSchedule& g, double l1, double l2,
                                          std::size_t grid_size);

/// A*(z) with sign, for a single z in [l1, l2].
[[nodiscard]] double a_star(const BreakSchedule& g, double l1, double l2, double z);

}  // namespace corrbreak
