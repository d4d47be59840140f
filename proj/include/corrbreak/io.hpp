#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "corrbreak/cusum.hpp"
#include "corrbreak/segmentation.hpp"
#include "corrbreak/series.hpp"

namespace corrbreak {

/**
 * @brief Reads a bivariate series from delimited text.
 *
 * The first line is a header. Rows hold either `x, y` or `label, x, y`;
 * the delimiter (comma or tab) is taken from the header line. Blank lines are
 * skipped. Line numbers in error messages are 1-based file lines.
 *
 * @throws InputError for ragged rows, non-numeric cells, or fewer than
 *         `min_rows` observations.
 */
[[nodiscard]] SeriesPair parse_csv(std::string_view text, std::size_t min_rows = 2);
[[nodiscard]] SeriesPair ingest_csv(const std::filesystem::path& path, std::size_t min_rows = 2);

/// Writes `label,x,y` (or `x,y` without labels) with round-trip precision.
[[nodiscard]] std::string series_csv(const SeriesPair& pair);

/// Report as JSON. When `pair` carries timestamps, dates are added next to
/// every index; they are ignored by report_from_json.
[[nodiscard]] nlohmann::json report_to_json(const ChangePointReport& r,
                                            const SeriesPair* pair = nullptr);
/// @throws InputError on a malformed document.
[[nodiscard]] ChangePointReport report_from_json(const nlohmann::json& j);

/// Changepoint table: index, fraction, date.
[[nodiscard]] std::string report_csv(const ChangePointReport& r, const SeriesPair* pair = nullptr);

/// Human-readable iteration log and segment correlations, 6 significant digits.
[[nodiscard]] std::string report_text(const ChangePointReport& r, const SeriesPair* pair = nullptr);

/// Profile curve with columns index, fraction, abs_A_T.
[[nodiscard]] std::string profile_csv(const CusumProfile& p);

/// Shortest decimal that reads back to the same double.
[[nodiscard]] std::string exact(double v);

}  // namespace corrbreak
