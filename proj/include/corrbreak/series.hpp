#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace corrbreak {

/**
 * @brief Aligned bivariate observations (X_t, Y_t), t = 1..T.
 *
 * Storage is 0-based; all library entry points that take segment bounds use
 * 1-based inclusive indices, so observation t lives at x()[t - 1].
 * Timestamps are opaque labels carried through to reports.
 */
class SeriesPair {
public:
    SeriesPair() = default;

    /// @throws InputError on length mismatch, T < 2 or non-finite values.
    SeriesPair(std::vector<double> x, std::vector<double> y,
               std::vector<std::string> timestamps = {});

    [[nodiscard]] std::size_t size() const noexcept { return x_.size(); }
    [[nodiscard]] std::span<const double> x() const noexcept { return x_; }
    [[nodiscard]] std::span<const double> y() const noexcept { return y_; }

    [[nodiscard]] bool has_timestamps() const noexcept { return !timestamps_.empty(); }
    [[nodiscard]] const std::vector<std::string>& timestamps() const noexcept {
        return timestamps_;
    }
    /// Label of 1-based observation t, or an empty string without timestamps.
    [[nodiscard]] std::string label(std::size_t t) const;

    /// Same observations with the roles of X and Y exchanged.
    [[nodiscard]] SeriesPair swapped() const;

    bool operator==(const SeriesPair&) const = default;

private:
    std::vector<double> x_;
    std::vector<double> y_;
    std::vector<std::string> timestamps_;
};

}  // namespace corrbreak
