#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "corrbreak/errors.hpp"
#include "corrbreak/io.hpp"
#include "corrbreak/montecarlo.hpp"
#include "corrbreak/segmentation.hpp"
#include "corrbreak/simulate.hpp"

namespace corrbreak::cli {

namespace fs = std::filesystem;

namespace {

constexpr const char* kFormats = R"(Output formats
  detect:
    report.json       T, changepoints[{index, fraction, date?}],
                      segments[{start, end, correlation|null, start_date?, end_date?}],
                      iterations[{step, interval[start,end], level, alpha, critical_value,
                                  statistic, significant, status, change_point|null,
                                  time_point?, date?}],
                      alpha_schedule[{k, alpha, critical_value}],
                      refinement_passes, refinement_capped
    run.json          the settings used (input, alpha0, n_min, bandwidth, ...)
    changepoints.csv  index,fraction[,date]
    profiles/NNN_START_END.csv   index,fraction,abs_A_T   (with --emit-profiles)
  mc:
    summary.json      design, replications, master_seed, alpha0, count_categories,
                      cells[{label, model, T, phi, rho_levels, breaks, generator, replications,
                             failures, counts, frequencies, band_halfwidth, conditioned,
                             locations[{true_fraction, median, mad}], wall_seconds}]
    summary.csv       one row per cell; freq_k/band_k per count category, the last
                      one pooling larger counts; median_i/mad_i per true break
Exit codes: 0 success, 2 input error, 3 numerical error.)";

struct SegmentationFlags {
    double alpha0 = 0.05;
    std::size_t n_min = 20;
    std::string bandwidth = "log";
    std::size_t lag = 1;
    std::size_t max_changepoints = 0;

    void add_to(CLI::App& app) {
        app.add_option("--alpha0", alpha0, "Family-wise significance level")->capture_default_str();
        app.add_option("--n-min", n_min, "Shortest segment that is tested")->capture_default_str();
        app.add_option("--bandwidth", bandwidth,
                       "Kernel bandwidth: log = max(1, floor(ln n)), fixed = --lag")
            ->check(CLI::IsMember({"log", "fixed"}))
            ->capture_default_str();
        app.add_option("--lag", lag, "Bandwidth used with --bandwidth fixed")->capture_default_str();
        app.add_option("--max-changepoints", max_changepoints, "Upper bound on detections, 0 = T / n_min")
            ->capture_default_str();
    }

    SegmentationConfig config() const {
        SegmentationConfig c;
        c.alpha0 = alpha0;
        c.n_min = n_min;
        c.max_changepoints = max_changepoints;
        c.hac = bandwidth == "fixed" ? HacConfig::fixed(lag) : HacConfig{};
        c.validate();
        return c;
    }

    nlohmann::json to_json() const {
        nlohmann::json j{{"alpha0", alpha0},
                         {"n_min", n_min},
                         {"bandwidth", bandwidth},
                         {"max_changepoints", max_changepoints}};
        if (bandwidth == "fixed") {
            j["lag"] = lag;
        }
        return j;
    }
};

std::vector<std::string> parse_formats(const std::vector<std::string>& raw) {
    std::vector<std::string> out;
    for (const std::string& f : raw) {
        if (f != "json" && f != "csv") {
            throw InputError("unknown format '" + f + "' (expected json or csv)");
        }
        if (std::find(out.begin(), out.end(), f) == out.end()) {
            out.push_back(f);
        }
    }
    return out;
}

bool wants(const std::vector<std::string>& formats, const char* f) {
    return std::find(formats.begin(), formats.end(), f) != formats.end();
}

void write_file(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path());
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw InputError("cannot write " + path.string());
    }
    f << text;
    if (!f) {
        throw InputError("failed writing " + path.string());
    }
}

std::string read_file(const fs::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw InputError("cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

std::string profile_name(std::size_t iteration, const CusumProfile& p) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%03zu_%zu_%zu.csv", iteration + 1, p.start, p.end);
    return buf;
}

// detect ---------------------------------------------------------------------

struct DetectCommand {
    std::string input;
    std::string out_dir = "corrbreak_out";
    std::vector<std::string> formats{"json"};
    bool emit_profiles = false;
    bool quiet = false;
    SegmentationFlags seg;

    int run(std::ostream& out) const {
        const SegmentationConfig cfg = seg.config();
        const auto fmts = parse_formats(formats);
        const SeriesPair pair = ingest_csv(input, 2 * cfg.n_min);

        std::map<std::size_t, std::string> profiles;
        ProfileSink sink;
        if (emit_profiles) {
            sink = [&](std::size_t iteration, const CusumProfile& p) {
                profiles[iteration] = profile_name(iteration, p) + '\n' + profile_csv(p);
            };
        }
        const ChangePointReport report = detect(pair, cfg, sink);

        const fs::path dir(out_dir);
        fs::create_directories(dir);
        if (wants(fmts, "json")) {
            write_file(dir / "report.json", report_to_json(report, &pair).dump(2) + '\n');
        }
        if (wants(fmts, "csv")) {
            write_file(dir / "changepoints.csv", report_csv(report, &pair));
        }
        nlohmann::json meta{{"command", "detect"},
                            {"input", input},
                            {"T", pair.size()},
                            {"segmentation", seg.to_json()},
                            {"formats", fmts},
                            {"emit_profiles", emit_profiles}};
        write_file(dir / "run.json", meta.dump(2) + '\n');
        for (const auto& [iteration, text] : profiles) {
            const auto nl = text.find('\n');
            write_file(dir / "profiles" / text.substr(0, nl), text.substr(nl + 1));
        }
        if (!quiet) {
            out << report_text(report, &pair);
        }
        return Ok;
    }
};

// simulate -------------------------------------------------------------------

struct SimulateCommand {
    std::string config;
    std::string model = "var1";
    std::size_t T = 1000;
    double phi = 0.0;
    std::vector<double> rho{0.0};
    std::vector<double> breaks;
    std::uint64_t seed = 1;
    std::size_t burn_in = 200;
    std::string psi = "target";
    std::string out;
    std::string write_config;

    CLI::Option* model_opt = nullptr;
    CLI::Option* psi_opt = nullptr;
    CLI::Option* T_opt = nullptr;
    CLI::Option* phi_opt = nullptr;
    CLI::Option* rho_opt = nullptr;
    CLI::Option* breaks_opt = nullptr;
    CLI::Option* seed_opt = nullptr;
    CLI::Option* burn_opt = nullptr;

    SimulationSpec spec() const {
        SimulationSpec s;
        if (!config.empty()) {
            s = parse_config(read_file(config));
        }
        if (model_opt->count() > 0 || config.empty()) {
            if (model == "dcc" && !std::holds_alternative<DccSpec>(s)) {
                s = DccSpec{};
            } else if (model == "var1" && !std::holds_alternative<Var1Spec>(s)) {
                s = Var1Spec{};
            }
        }
        const bool fresh = config.empty();
        std::visit(
            [&](auto& g) {
                if (fresh || T_opt->count() > 0) g.T = T;
                if (fresh || seed_opt->count() > 0) g.seed = seed;
                if (fresh || burn_opt->count() > 0) g.burn_in = burn_in;
                if (fresh || rho_opt->count() > 0) g.schedule.levels = rho;
                if (fresh || breaks_opt->count() > 0) g.schedule.breaks = breaks;
            },
            s);
        if (auto* v = std::get_if<Var1Spec>(&s)) {
            if (fresh || phi_opt->count() > 0) v->phi = phi;
        } else if (phi_opt->count() > 0) {
            throw InputError("--phi applies to the var1 model only");
        }
        if (auto* d = std::get_if<DccSpec>(&s)) {
            if (fresh || psi_opt->count() > 0) {
                d->psi = psi == "rolling" ? PsiSource::Rolling : PsiSource::Target;
            }
        } else if (psi_opt->count() > 0) {
            throw InputError("--psi applies to the dcc model only");
        }
        std::visit([](const auto& g) { g.validate(); }, s);
        return s;
    }

    int run(std::ostream& os) const {
        const SimulationSpec s = spec();
        const std::string csv = series_csv(generate(s));
        if (!write_config.empty()) {
            write_file(write_config, to_config(s));
        }
        if (out.empty() || out == "-") {
            os << csv;
        } else {
            write_file(out, csv);
        }
        return Ok;
    }
};

// mc -------------------------------------------------------------------------

struct McCommand {
    std::string design;
    std::string config;
    std::size_t reps = 300;
    std::uint64_t seed = 20130501;
    std::size_t threads = 0;
    std::vector<std::size_t> sizes;
    std::vector<double> phis;
    std::string out_dir = "corrbreak_mc";
    std::vector<std::string> formats{"json", "csv"};
    bool list = false;
    SegmentationFlags seg;

    Experiment experiment() const {
        if (design.empty() == config.empty()) {
            throw InputError("mc needs exactly one of --design or --config");
        }
        Experiment exp;
        if (!design.empty()) {
            exp = builtin_design(design, sizes, phis);
        } else {
            const SimulationSpec s = parse_config(read_file(config));
            const double phi = std::holds_alternative<Var1Spec>(s) ? std::get<Var1Spec>(s).phi : 0.0;
            exp.name = fs::path(config).stem().string();
            exp.cells.push_back({exp.name, s, phi});
            exp.count_categories = std::max<std::size_t>(2, correlation_breaks(s).size() + 1);
        }
        if (exp.cells.empty()) {
            throw InputError("the --T / --phi filters leave no cells in design '" + design + "'");
        }
        exp.replications = reps;
        exp.master_seed = seed;
        exp.threads = threads;
        exp.segmentation = seg.config();
        exp.validate();
        return exp;
    }

    int run(std::ostream& out) const {
        if (list) {
            for (const std::string& n : builtin_design_names()) {
                out << n << '\n';
            }
            return Ok;
        }
        const auto fmts = parse_formats(formats);
        const Experiment exp = experiment();
        const ExperimentSummary s = corrbreak::run(exp);

        const fs::path dir(out_dir);
        if (wants(fmts, "json")) {
            write_file(dir / "summary.json", summary_json(s));
        }
        if (wants(fmts, "csv")) {
            write_file(dir / "summary.csv", summary_csv(s));
        }

        out << s.name << ": " << s.replications << " replications, seed " << s.master_seed << '\n';
        for (const CellSummary& c : s.cells) {
            out << "  " << std::left << std::setw(44) << c.label;
            for (std::size_t k = 0; k < c.frequencies.size(); ++k) {
                out << ' ' << (k + 1 == c.frequencies.size() ? ">=" : "") << k << ':'
                    << std::setprecision(3) << std::fixed << c.frequencies[k];
            }
            for (const LocationSummary& l : c.locations) {
                out << "  z=" << std::setprecision(3) << l.median << " (" << l.mad << ')';
            }
            if (c.failures > 0) {
                out << "  failures=" << c.failures;
            }
            out << std::defaultfloat << '\n';
        }
        return Ok;
    }
};

// astar ----------------------------------------------------------------------

struct AStarCommand {
    std::vector<double> levels;
    std::vector<double> breaks;
    double l1 = 0.0;
    double l2 = 1.0;
    std::size_t grid = 1000;
    std::string out;

    int run(std::ostream& os) const {
        const BreakSchedule g{breaks, levels};
        g.validate(false);
        const AStarProfile p = a_star_profile(g, l1, l2, grid);
        const char* shape = p.shape == AStarShape::Constant ? "constant"
                            : p.shape == AStarShape::Unique ? "unique"
                                                            : "multiple";
        os << "shape: " << shape << "\nmax |A*|: " << std::setprecision(6) << p.max_value
           << "\nmaximizers:";
        for (const double z : p.maximizers) {
            os << ' ' << z;
        }
        os << '\n';
        if (!out.empty()) {
            std::ostringstream csv;
            csv << "z,abs_A_star\n";
            for (std::size_t i = 0; i < p.grid.size(); ++i) {
                csv << exact(p.grid[i]) << ',' << exact(p.values[i]) << '\n';
            }
            write_file(out, csv.str());
        }
        return Ok;
    }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Change points in the correlation of a bivariate series", "corrbreak"};
    app.footer(kFormats);
    app.require_subcommand(1);

    DetectCommand det;
    auto* d = app.add_subcommand("detect", "Detect correlation change points in a CSV series");
    d->add_option("input", det.input, "CSV with header; columns [date,]x,y; comma or tab")
        ->required()
        ->check(CLI::ExistingFile);
    d->add_option("--out", det.out_dir, "Output directory")->capture_default_str();
    d->add_option("--format", det.formats, "Report formats: json, csv")->delimiter(',')->capture_default_str();
    d->add_flag("--emit-profiles", det.emit_profiles, "Write one |A_T| profile CSV per tested interval");
    d->add_flag("--quiet", det.quiet, "Do not print the summary");
    det.seg.add_to(*d);

    SimulateCommand sim;
    auto* s = app.add_subcommand("simulate", "Generate a bivariate series as CSV");
    s->add_option("--config", sim.config, "Spec file (key = value lines); flags override it")
        ->check(CLI::ExistingFile);
    sim.model_opt = s->add_option("--model", sim.model, "var1 or dcc")
                        ->check(CLI::IsMember({"var1", "dcc"}))
                        ->capture_default_str();
    sim.T_opt = s->add_option("--T", sim.T, "Sample size")->capture_default_str();
    sim.phi_opt = s->add_option("--phi", sim.phi, "VAR(1) coefficient")->capture_default_str();
    sim.rho_opt = s->add_option("--rho", sim.rho, "Correlation levels, one per regime")->delimiter(',');
    sim.breaks_opt = s->add_option("--breaks", sim.breaks, "Break fractions in (0, 1)")->delimiter(',');
    sim.psi_opt = s->add_option("--psi", sim.psi, "DCC correlation driver: target or rolling")
                      ->check(CLI::IsMember({"target", "rolling"}))
                      ->capture_default_str();
    sim.seed_opt = s->add_option("--seed", sim.seed, "RNG seed")->capture_default_str();
    sim.burn_opt = s->add_option("--burn-in", sim.burn_in, "Discarded warm-up draws")->capture_default_str();
    s->add_option("--out", sim.out, "Output CSV (default: standard output)");
    s->add_option("--write-config", sim.write_config, "Also write the effective spec here");

    McCommand mc;
    auto* m = app.add_subcommand("mc", "Run a Monte Carlo experiment");
    m->add_option("--design", mc.design, "Built-in design (see --list)");
    m->add_option("--config", mc.config, "Single-cell experiment from a simulate spec file")
        ->check(CLI::ExistingFile);
    m->add_option("--reps", mc.reps, "Replications per cell")->capture_default_str();
    m->add_option("--seed", mc.seed, "Master seed")->capture_default_str();
    m->add_option("--threads", mc.threads, "Worker threads, 0 = all cores")->capture_default_str();
    m->add_option("--T", mc.sizes, "Keep only these sample sizes")->delimiter(',');
    m->add_option("--phi", mc.phis, "Keep only these VAR(1) coefficients")->delimiter(',');
    m->add_option("--out", mc.out_dir, "Output directory")->capture_default_str();
    m->add_option("--format", mc.formats, "Summary formats: json, csv")->delimiter(',')->capture_default_str();
    m->add_flag("--list", mc.list, "List built-in designs and exit");
    mc.seg.add_to(*m);

    AStarCommand as;
    auto* a = app.add_subcommand("astar", "Evaluate the limiting target |A*(z)| of a step function");
    a->add_option("--levels", as.levels, "Regime values of g")->delimiter(',')->required();
    a->add_option("--breaks", as.breaks, "Break fractions of g")->delimiter(',');
    a->add_option("--l1", as.l1, "Left end of the interval")->capture_default_str();
    a->add_option("--l2", as.l2, "Right end of the interval")->capture_default_str();
    a->add_option("--grid", as.grid, "Grid points for the curve")->capture_default_str();
    a->add_option("--out", as.out, "Write the curve as CSV (z,abs_A_star)");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return Ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return Ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return InputFailure;
    }

    try {
        if (d->parsed()) return det.run(out);
        if (s->parsed()) return sim.run(out);
        if (m->parsed()) return mc.run(out);
        return as.run(out);
    } catch (const InputError& e) {
        err << "input error: " << e.what() << '\n';
        return InputFailure;
    } catch (const RangeError& e) {
        err << "input error: " << e.what() << '\n';
        return InputFailure;
    } catch (const fs::filesystem_error& e) {
        err << "input error: " << e.what() << '\n';
        return InputFailure;
    } catch (const std::exception& e) {
        err << "numerical error: " << e.what() << '\n';
        return NumericalFailure;
    }
}

}  // namespace corrbreak::cli
