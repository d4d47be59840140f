#include <cmath>
#include <sstream>

#include <json.hpp>

#include "corrbreak/io.hpp"
#include "corrbreak/montecarlo.hpp"

namespace corrbreak {

namespace {

std::string cell_or_empty(double v) {
    return std::isfinite(v) ? exact(v) : std::string();
}

nlohmann::json number_or_null(double v) {
    return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

std::string join(const std::vector<double>& v, char sep) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) {
            out += sep;
        }
        out += exact(v[i]);
    }
    return out;
}

}  // namespace

std::string summary_csv(const ExperimentSummary& s) {
    std::size_t max_breaks = 0;
    for (const CellSummary& c : s.cells) {
        max_breaks = std::max(max_breaks, c.breaks.size());
    }
    std::ostringstream os;
    os << "design,model,T,phi,rho,breaks,replications,failures";
    for (std::size_t k = 0; k <= s.count_categories; ++k) {
        const std::string tag = k == s.count_categories ? std::to_string(k) + "plus" : std::to_string(k);
        os << ",freq_" << tag << ",band_" << tag;
    }
    os << ",conditioned";
    for (std::size_t i = 1; i <= max_breaks; ++i) {
        os << ",median_" << i << ",mad_" << i;
    }
    os << '\n';

    for (const CellSummary& c : s.cells) {
        os << s.name << ',' << c.model << ',' << c.T << ',' << exact(c.phi) << ','
           << join(c.rho_levels, ';') << ',' << join(c.breaks, ';') << ',' << c.replications << ','
           << c.failures;
        for (std::size_t k = 0; k < c.frequencies.size(); ++k) {
            os << ',' << exact(c.frequencies[k]) << ',' << exact(c.band_halfwidth[k]);
        }
        os << ',' << c.conditioned;
        for (std::size_t i = 0; i < max_breaks; ++i) {
            if (i < c.locations.size()) {
                os << ',' << cell_or_empty(c.locations[i].median) << ','
                   << cell_or_empty(c.locations[i].mad);
            } else {
                os << ",,";
            }
        }
        os << '\n';
    }
    return os.str();
}

std::string summary_json(const ExperimentSummary& s) {
    using nlohmann::json;
    json cells = json::array();
    for (const CellSummary& c : s.cells) {
        json locs = json::array();
        for (const LocationSummary& l : c.locations) {
            locs.push_back({{"true_fraction", l.true_fraction},
                            {"median", number_or_null(l.median)},
                            {"mad", number_or_null(l.mad)}});
        }
        cells.push_back({{"label", c.label},
                         {"model", c.model},
                         {"T", c.T},
                         {"phi", c.phi},
                         {"rho_levels", c.rho_levels},
                         {"breaks", c.breaks},
                         {"generator", c.generator},
                         {"replications", c.replications},
                         {"failures", c.failures},
                         {"counts", c.counts},
                         {"frequencies", c.frequencies},
                         {"band_halfwidth", c.band_halfwidth},
                         {"conditioned", c.conditioned},
                         {"locations", std::move(locs)},
                         {"wall_seconds", c.wall_seconds}});
    }
    const json j{{"design", s.name},
                 {"replications", s.replications},
                 {"master_seed", s.master_seed},
                 {"alpha0", s.alpha0},
                 {"count_categories", s.count_categories},
                 {"cells", std::move(cells)},
                 {"wall_seconds", s.wall_seconds}};
    return j.dump(2) + '\n';
}

}  // namespace corrbreak
