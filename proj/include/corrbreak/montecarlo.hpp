#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "corrbreak/segmentation.hpp"
#include "corrbreak/simulate.hpp"

namespace corrbreak {

/// One parameter combination of an experiment.
struct ExperimentCell {
    std::string label;
    SimulationSpec generator;
    double phi = 0.0;  ///< reporting only; 0 for DCC cells
};

struct Experiment {
    std::string name = "custom";
    std::vector<ExperimentCell> cells;
    std::size_t replications = 300;
    std::uint64_t master_seed = 20130501;
    SegmentationConfig segmentation;
    /// Counts 0 .. count_categories - 1 are tabulated separately, larger ones pooled.
    std::size_t count_categories = 2;
    std::size_t threads = 0;  ///< 0 selects std::thread::hardware_concurrency()

    void validate() const;
};

struct LocationSummary {
    double true_fraction = 0.0;
    double median = 0.0;
    double mad = 0.0;  ///< median(|z - median(z)|), unscaled

    bool operator==(const LocationSummary&) const = default;
};

struct CellSummary {
    std::string label;
    std::string model;
    std::size_t T = 0;
    double phi = 0.0;
    std::vector<double> rho_levels;
    std::vector<double> breaks;
    std::string generator;  ///< effective spec in config syntax, seed excluded

    std::size_t replications = 0;
    std::size_t failures = 0;
    std::vector<std::size_t> counts;      ///< per count category
    std::vector<double> frequencies;      ///< counts / successful replications
    std::vector<double> band_halfwidth;   ///< 1.96 * sqrt(p (1 - p) / n)
    std::size_t conditioned = 0;          ///< replications whose count equals the true count
    std::vector<LocationSummary> locations;
    double wall_seconds = 0.0;

    /// Equality over every field except wall time.
    [[nodiscard]] bool same_outcome(const CellSummary& o) const;
};

struct ExperimentSummary {
    std::string name;
    std::size_t replications = 0;
    std::uint64_t master_seed = 0;
    double alpha0 = 0.0;
    std::size_t count_categories = 0;
    std::vector<CellSummary> cells;
    double wall_seconds = 0.0;

    [[nodiscard]] bool same_outcome(const ExperimentSummary& o) const;
};

/// Outcome of a single replication.
struct Replication {
    std::uint64_t seed = 0;
    bool failed = false;
    std::vector<double> fractions;

    bool operator==(const Replication&) const = default;
};

/// Runs replications 0 .. reps-1 of one cell; replication r uses derive_seed(master, r).
[[nodiscard]] std::vector<Replication> run_cell(const ExperimentCell& cell, const Experiment& exp);

/// Tabulates a cell from its replications.
[[nodiscard]] CellSummary summarize(const ExperimentCell& cell, const Experiment& exp,
                                    const std::vector<Replication>& reps);

[[nodiscard]] ExperimentSummary run(const Experiment& exp);

[[nodiscard]] double median(std::vector<double> v);
[[nodiscard]] double median_abs_deviation(const std::vector<double>& v);

/// Built-in designs: var1-null, var1-single-break, var1-two-breaks,
/// var1-two-breaks-mean-shift, dcc-null, dcc-single-break, dcc-two-breaks.
/// Empty filters keep every sample size / phi of the design.
/// @throws InputError for an unknown design name.
[[nodiscard]] Experiment builtin_design(const std::string& name,
                                        const std::vector<std::size_t>& sizes = {},
                                        const std::vector<double>& phis = {});
[[nodiscard]] std::vector<std::string> builtin_design_names();

[[nodiscard]] std::string summary_csv(const ExperimentSummary& s);
[[nodiscard]] std::string summary_json(const ExperimentSummary& s);

}  // namespace corrbreak
