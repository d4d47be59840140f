#include "corrbreak/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

#include "corrbreak/errors.hpp"
#include "corrbreak/rng.hpp"

namespace corrbreak {

void Experiment::validate() const {
    if (replications < 1) {
        throw InputError("an experiment needs at least one replication");
    }
    if (count_categories < 1) {
        throw InputError("count_categories must be at least 1");
    }
    segmentation.validate();
}

namespace {

std::string generator_text(const SimulationSpec& spec) {
    std::istringstream in(to_config(spec));
    std::string out;
    for (std::string line; std::getline(in, line);) {
        if (line.rfind("seed =", 0) != 0) {
            out += line + '\n';
        }
    }
    return out;
}

}  // namespace

double median(std::vector<double> v) {
    if (v.empty()) {
        return std::nan("");
    }
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    const double upper = v[mid];
    if (v.size() % 2 == 1) {
        return upper;
    }
    const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lower + upper);
}

double median_abs_deviation(const std::vector<double>& v) {
    const double m = median(v);
    std::vector<double> dev;
    dev.reserve(v.size());
    for (const double x : v) {
        dev.push_back(std::abs(x - m));
    }
    return median(std::move(dev));
}

std::vector<Replication> run_cell(const ExperimentCell& cell, const Experiment& exp) {
    std::vector<Replication> out(exp.replications);
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t r = next++; r < out.size(); r = next++) {
            Replication& rep = out[r];
            rep.seed = derive_seed(exp.master_seed, r);
            try {
                const SeriesPair pair = generate(with_seed(cell.generator, rep.seed));
                rep.fractions = detect(pair, exp.segmentation).fractions;
            } catch (const std::exception&) {
                rep.failed = true;
                rep.fractions.clear();
            }
        }
    };

    std::size_t threads = exp.threads;
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = std::min(threads, out.size());
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (std::size_t i = 0; i < threads; ++i) {
            pool.emplace_back(worker);
        }
    }
    return out;
}

CellSummary summarize(const ExperimentCell& cell, const Experiment& exp,
                      const std::vector<Replication>& reps) {
    CellSummary s;
    s.label = cell.label;
    s.model = std::holds_alternative<Var1Spec>(cell.generator) ? "var1" : "dcc";
    s.generator = generator_text(cell.generator);
    s.T = sample_size(cell.generator);
    s.phi = cell.phi;
    s.rho_levels = std::visit([](const auto& g) { return g.schedule.levels; }, cell.generator);
    s.breaks = correlation_breaks(cell.generator);
    s.replications = reps.size();
    s.counts.assign(exp.count_categories + 1, 0);

    const std::size_t truth = s.breaks.size();
    std::vector<std::vector<double>> located(truth);
    for (const Replication& r : reps) {
        if (r.failed) {
            ++s.failures;
            continue;
        }
        const std::size_t found = r.fractions.size();
        ++s.counts[std::min(found, exp.count_categories)];
        if (found == truth) {
            ++s.conditioned;
            for (std::size_t i = 0; i < truth; ++i) {
                located[i].push_back(r.fractions[i]);
            }
        }
    }

    const std::size_t ok = s.replications - s.failures;
    for (const std::size_t c : s.counts) {
        const double p = ok > 0 ? static_cast<double>(c) / static_cast<double>(ok) : 0.0;
        s.frequencies.push_back(p);
        s.band_halfwidth.push_back(ok > 0 ? 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(ok))
                                          : 0.0);
    }
    for (std::size_t i = 0; i < truth; ++i) {
        s.locations.push_back(
            LocationSummary{s.breaks[i], median(located[i]), median_abs_deviation(located[i])});
    }
    return s;
}

namespace {

bool same_double(double a, double b) {
    return a == b || (std::isnan(a) && std::isnan(b));
}

}  // namespace

bool CellSummary::same_outcome(const CellSummary& o) const {
    if (label != o.label || model != o.model || T != o.T || phi != o.phi ||
        rho_levels != o.rho_levels || breaks != o.breaks || generator != o.generator || replications != o.replications ||
        failures != o.failures || counts != o.counts || frequencies != o.frequencies ||
        band_halfwidth != o.band_halfwidth || conditioned != o.conditioned ||
        locations.size() != o.locations.size()) {
        return false;
    }
    for (std::size_t i = 0; i < locations.size(); ++i) {
        const auto& a = locations[i];
        const auto& b = o.locations[i];
        if (a.true_fraction != b.true_fraction || !same_double(a.median, b.median) ||
            !same_double(a.mad, b.mad)) {
            return false;
        }
    }
    return true;
}

bool ExperimentSummary::same_outcome(const ExperimentSummary& o) const {
    if (name != o.name || replications != o.replications || master_seed != o.master_seed ||
        alpha0 != o.alpha0 || count_categories != o.count_categories ||
        cells.size() != o.cells.size()) {
        return false;
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (!cells[i].same_outcome(o.cells[i])) {
            return false;
        }
    }
    return true;
}

ExperimentSummary run(const Experiment& exp) {
    exp.validate();
    using Clock = std::chrono::steady_clock;
    const auto begin = Clock::now();

    ExperimentSummary out;
    out.name = exp.name;
    out.replications = exp.replications;
    out.master_seed = exp.master_seed;
    out.alpha0 = exp.segmentation.alpha0;
    out.count_categories = exp.count_categories;
    for (const ExperimentCell& cell : exp.cells) {
        const auto t0 = Clock::now();
        const auto reps = run_cell(cell, exp);
        CellSummary s = summarize(cell, exp, reps);
        s.wall_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        out.cells.push_back(std::move(s));
    }
    out.wall_seconds = std::chrono::duration<double>(Clock::now() - begin).count();
    return out;
}

namespace {

std::string num(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

std::string label_of(double phi, const std::vector<double>& rho, const std::vector<double>& breaks,
                     std::size_t T, bool var1) {
    std::ostringstream os;
    if (var1) {
        os << "phi=" << num(phi) << ' ';
    }
    os << "rho=";
    for (std::size_t i = 0; i < rho.size(); ++i) {
        os << (i ? ">" : "") << num(rho[i]);
    }
    if (!breaks.empty()) {
        os << " z=";
        for (std::size_t i = 0; i < breaks.size(); ++i) {
            os << (i ? "," : "") << num(breaks[i]);
        }
    }
    os << " T=" << T;
    return os.str();
}

template <typename T>
std::vector<T> filtered(const std::vector<T>& all, const std::vector<T>& keep) {
    if (keep.empty()) {
        return all;
    }
    std::vector<T> out;
    for (const T& v : all) {
        if (std::find(keep.begin(), keep.end(), v) != keep.end()) {
            out.push_back(v);
        }
    }
    return out;
}

struct Regime {
    std::vector<double> breaks;
    std::vector<double> levels;
};

}  // namespace

std::vector<std::string> builtin_design_names() {
    return {"var1-null",        "var1-single-break", "var1-two-breaks", "var1-two-breaks-mean-shift",
            "dcc-null",         "dcc-single-break",  "dcc-two-breaks"};
}

Experiment builtin_design(const std::string& name, const std::vector<std::size_t>& sizes,
                          const std::vector<double>& phis) {
    const std::vector<double> var_phis = filtered<double>({-0.5, 0.0, 0.8}, phis);
    const std::vector<std::size_t> var_sizes = filtered<std::size_t>({200, 500, 1000, 2000, 3000}, sizes);
    const std::vector<std::size_t> dcc_sizes = filtered<std::size_t>({500, 1000, 2000, 3000, 4000}, sizes);

    std::vector<Regime> regimes;
    bool var1 = true;
    bool mean_shift = false;
    std::size_t categories = 2;
    if (name == "var1-null") {
        regimes = {{{}, {-0.5}}, {{}, {0.0}}, {{}, {0.5}}};
        categories = 1;
    } else if (name == "var1-single-break") {
        for (const double z : {0.25, 0.5, 0.75}) {
            for (const double r1 : {-0.25, 0.15, 0.5}) {
                regimes.push_back({{z}, {0.25, r1}});
            }
        }
    } else if (name == "var1-two-breaks" || name == "var1-two-breaks-mean-shift") {
        regimes = {{{0.25, 0.75}, {0.25, -0.25, 0.25}},
                   {{0.25, 0.75}, {0.25, 0.5, 0.0}},
                   {{0.25, 0.75}, {0.25, 0.0, 0.25}}};
        categories = 3;
        mean_shift = name == "var1-two-breaks-mean-shift";
    } else if (name == "dcc-null") {
        regimes = {{{}, {0.0}}, {{}, {0.5}}, {{}, {0.8}}};
        var1 = false;
        categories = 1;
    } else if (name == "dcc-single-break") {
        for (const double z : {0.25, 0.5, 0.75}) {
            for (const double r1 : {0.6, 0.7, 0.8}) {
                regimes.push_back({{z}, {0.5, r1}});
            }
        }
        var1 = false;
    } else if (name == "dcc-two-breaks") {
        regimes = {{{0.25, 0.75}, {0.5, 0.7, 0.5}},
                   {{0.25, 0.75}, {0.5, 0.7, 0.6}},
                   {{0.25, 0.75}, {0.5, 0.6, 0.7}}};
        var1 = false;
        categories = 3;
    } else {
        throw InputError("unknown design '" + name + "'");
    }

    Experiment exp;
    exp.name = name;
    exp.count_categories = categories;
    for (const Regime& reg : regimes) {
        if (var1) {
            for (const double phi : var_phis) {
                for (const std::size_t T : var_sizes) {
                    Var1Spec s;
                    s.phi = phi;
                    s.schedule = BreakSchedule{reg.breaks, reg.levels};
                    s.T = T;
                    if (mean_shift) {
                        s.mean_schedule = BreakSchedule{{0.25, 0.75}, {0.5, 1.0, 0.5}};
                    }
                    exp.cells.push_back({label_of(phi, reg.levels, reg.breaks, T, true), s, phi});
                }
            }
        } else {
            for (const std::size_t T : dcc_sizes) {
                DccSpec s;
                s.schedule = BreakSchedule{reg.breaks, reg.levels};
                s.T = T;
                exp.cells.push_back({label_of(0.0, reg.levels, reg.breaks, T, false), s, 0.0});
            }
        }
    }
    return exp;
}

}  // namespace corrbreak
