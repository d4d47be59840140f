#include "corrbreak/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <system_error>
#include <vector>

#include "corrbreak/errors.hpp"

namespace corrbreak {

using nlohmann::json;

std::string exact(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line, char delim) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        const auto next = line.find(delim, pos);
        out.push_back(line.substr(pos, next == std::string_view::npos ? next : next - pos));
        if (next == std::string_view::npos) {
            return out;
        }
        pos = next + 1;
    }
}

double parse_cell(std::string_view cell, std::size_t line, std::size_t column) {
    cell = trim(cell);
    if (!cell.empty() && cell.front() == '+') {
        cell.remove_prefix(1);
    }
    double v = 0;
    const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (cell.empty() || res.ec != std::errc{} || res.ptr != cell.data() + cell.size() ||
        !std::isfinite(v)) {
        throw InputError("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": not a number: '" + std::string(cell) + "'");
    }
    return v;
}

std::string sig6(double v) {
    std::ostringstream os;
    os << std::setprecision(6) << v;
    return os.str();
}

}  // namespace

SeriesPair parse_csv(std::string_view text, std::size_t min_rows) {
    std::vector<double> x;
    std::vector<double> y;
    std::vector<std::string> labels;

    char delim = ',';
    std::size_t columns = 0;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    bool header_seen = false;
    while (pos < text.size()) {
        const auto nl = text.find('\n', pos);
        const std::string_view raw =
            text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() : nl + 1;
        ++line_no;
        const std::string_view line = trim(raw);
        if (line.empty()) {
            continue;
        }
        if (!header_seen) {
            header_seen = true;
            delim = line.find('\t') != std::string_view::npos ? '\t' : ',';
            columns = split(line, delim).size();
            if (columns != 2 && columns != 3) {
                throw InputError("line " + std::to_string(line_no) +
                                 ": header must name 2 columns (x, y) or 3 (date, x, y), found " +
                                 std::to_string(columns));
            }
            continue;
        }
        const auto cells = split(line, delim);
        if (cells.size() != columns) {
            throw InputError("line " + std::to_string(line_no) + ": expected " +
                             std::to_string(columns) + " fields, found " +
                             std::to_string(cells.size()));
        }
        const std::size_t off = columns == 3 ? 1 : 0;
        if (off == 1) {
            labels.emplace_back(trim(cells[0]));
        }
        x.push_back(parse_cell(cells[off], line_no, off + 1));
        y.push_back(parse_cell(cells[off + 1], line_no, off + 2));
    }
    if (!header_seen) {
        throw InputError("input is empty");
    }
    if (x.size() < std::max<std::size_t>(min_rows, 2)) {
        throw InputError("input has " + std::to_string(x.size()) + " rows, need at least " +
                         std::to_string(std::max<std::size_t>(min_rows, 2)));
    }
    return SeriesPair(std::move(x), std::move(y), std::move(labels));
}

SeriesPair ingest_csv(const std::filesystem::path& path, std::size_t min_rows) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str(), min_rows);
}

std::string series_csv(const SeriesPair& pair) {
    std::ostringstream os;
    const bool labelled = pair.has_timestamps();
    os << (labelled ? "date,x,y\n" : "x,y\n");
    for (std::size_t t = 1; t <= pair.size(); ++t) {
        if (labelled) {
            os << pair.label(t) << ',';
        }
        os << exact(pair.x()[t - 1]) << ',' << exact(pair.y()[t - 1]) << '\n';
    }
    return os.str();
}

json report_to_json(const ChangePointReport& r, const SeriesPair* pair) {
    const bool dated = pair != nullptr && pair->has_timestamps();
    const double T = static_cast<double>(r.T);
    json j;
    j["T"] = r.T;

    json cps = json::array();
    for (const std::size_t c : r.changepoints) {
        json e{{"index", c}, {"fraction", static_cast<double>(c) / T}};
        if (dated) {
            e["date"] = pair->label(c);
        }
        cps.push_back(std::move(e));
    }
    j["changepoints"] = std::move(cps);

    json segs = json::array();
    std::size_t start = 1;
    for (std::size_t k = 0; k < r.segment_correlations.size(); ++k) {
        const std::size_t end = k < r.changepoints.size() ? r.changepoints[k] : r.T;
        json e{{"start", start}, {"end", end}};
        const auto& c = r.segment_correlations[k];
        e["correlation"] = c ? json(*c) : json(nullptr);
        if (dated) {
            e["start_date"] = pair->label(start);
            e["end_date"] = pair->label(end);
        }
        segs.push_back(std::move(e));
        start = end + 1;
    }
    j["segments"] = std::move(segs);

    json its = json::array();
    for (const IterationRecord& it : r.iterations) {
        json e{{"step", to_string(it.step)},
               {"interval", {it.start, it.end}},
               {"level", it.level},
               {"alpha", it.alpha},
               {"critical_value", it.critical_value},
               {"statistic", it.statistic},
               {"significant", it.significant},
               {"status", to_string(it.status)}};
        if (it.status == TestStatus::Tested) {
            e["change_point"] = it.candidate;
            e["time_point"] = static_cast<double>(it.candidate) / T;
            if (dated) {
                e["date"] = pair->label(it.candidate);
            }
        } else {
            e["change_point"] = nullptr;
        }
        its.push_back(std::move(e));
    }
    j["iterations"] = std::move(its);

    json alphas = json::array();
    for (const AlphaLevel& a : r.alpha_schedule_used) {
        alphas.push_back({{"k", a.k}, {"alpha", a.alpha}, {"critical_value", a.critical_value}});
    }
    j["alpha_schedule"] = std::move(alphas);
    j["refinement_passes"] = r.refinement_passes;
    j["refinement_capped"] = r.refinement_capped;
    return j;
}

namespace {

Step step_from(const std::string& s) {
    if (s == "detect") return Step::Detect;
    if (s == "refine") return Step::Refine;
    throw InputError("unknown step '" + s + "'");
}

TestStatus status_from(const std::string& s) {
    for (const TestStatus t : {TestStatus::Tested, TestStatus::TooShort, TestStatus::Degenerate,
                               TestStatus::NonPositiveVariance}) {
        if (s == to_string(t)) {
            return t;
        }
    }
    throw InputError("unknown status '" + s + "'");
}

}  // namespace

ChangePointReport report_from_json(const json& j) {
    try {
        ChangePointReport r;
        r.T = j.at("T").get<std::size_t>();
        for (const auto& c : j.at("changepoints")) {
            r.changepoints.push_back(c.at("index").get<std::size_t>());
            r.fractions.push_back(c.at("fraction").get<double>());
        }
        for (const auto& s : j.at("segments")) {
            const auto& c = s.at("correlation");
            r.segment_correlations.push_back(c.is_null() ? std::nullopt
                                                         : std::optional<double>(c.get<double>()));
        }
        for (const auto& e : j.at("iterations")) {
            IterationRecord it;
            it.step = step_from(e.at("step").get<std::string>());
            it.start = e.at("interval").at(0).get<std::size_t>();
            it.end = e.at("interval").at(1).get<std::size_t>();
            it.level = e.at("level").get<std::size_t>();
            it.alpha = e.at("alpha").get<double>();
            it.critical_value = e.at("critical_value").get<double>();
            it.statistic = e.at("statistic").get<double>();
            it.significant = e.at("significant").get<bool>();
            it.status = status_from(e.at("status").get<std::string>());
            const auto& cp = e.at("change_point");
            it.candidate = cp.is_null() ? 0 : cp.get<std::size_t>();
            r.iterations.push_back(it);
        }
        for (const auto& a : j.at("alpha_schedule")) {
            r.alpha_schedule_used.push_back(AlphaLevel{a.at("k").get<std::size_t>(),
                                                       a.at("alpha").get<double>(),
                                                       a.at("critical_value").get<double>()});
        }
        r.refinement_passes = j.at("refinement_passes").get<std::size_t>();
        r.refinement_capped = j.at("refinement_capped").get<bool>();
        return r;
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed report: ") + e.what());
    }
}

std::string report_csv(const ChangePointReport& r, const SeriesPair* pair) {
    const bool dated = pair != nullptr && pair->has_timestamps();
    std::ostringstream os;
    os << "index,fraction" << (dated ? ",date" : "") << '\n';
    for (std::size_t i = 0; i < r.changepoints.size(); ++i) {
        os << r.changepoints[i] << ',' << exact(r.fractions[i]);
        if (dated) {
            os << ',' << pair->label(r.changepoints[i]);
        }
        os << '\n';
    }
    return os.str();
}

std::string report_text(const ChangePointReport& r, const SeriesPair* pair) {
    const bool dated = pair != nullptr && pair->has_timestamps();
    const double T = static_cast<double>(r.T);
    std::ostringstream os;
    os << "Iterations (T = " << r.T << "; * = significant)\n";
    os << std::left << std::setw(8) << "step" << std::setw(16) << "interval" << std::setw(14)
       << "Q_T" << std::setw(12) << "critical" << std::setw(14) << "change point"
       << std::setw(12) << "time point" << (dated ? "date" : "") << '\n';
    for (const IterationRecord& it : r.iterations) {
        std::ostringstream iv;
        iv << '[' << it.start << ", " << it.end << ']';
        os << std::setw(8) << to_string(it.step) << std::setw(16) << iv.str();
        if (it.status != TestStatus::Tested) {
            os << "untestable (" << to_string(it.status) << ")\n";
            continue;
        }
        const std::string q = sig6(it.statistic) + (it.significant ? " (*)" : "");
        os << std::setw(14) << q << std::setw(12) << sig6(it.critical_value) << std::setw(14)
           << it.candidate << std::setw(12) << sig6(static_cast<double>(it.candidate) / T);
        if (dated) {
            os << pair->label(it.candidate);
        }
        os << '\n';
    }

    os << "\nChange points: ";
    if (r.changepoints.empty()) {
        os << "none";
    }
    for (std::size_t i = 0; i < r.changepoints.size(); ++i) {
        os << (i ? ", " : "") << r.changepoints[i];
        if (dated) {
            os << " (" << pair->label(r.changepoints[i]) << ')';
        }
    }
    os << "\nSegment correlations:\n";
    std::size_t start = 1;
    for (std::size_t k = 0; k < r.segment_correlations.size(); ++k) {
        const std::size_t end = k < r.changepoints.size() ? r.changepoints[k] : r.T;
        const auto& c = r.segment_correlations[k];
        os << "  [" << start << ", " << end << "]  " << (c ? sig6(*c) : "undefined") << '\n';
        start = end + 1;
    }
    return os.str();
}

std::string profile_csv(const CusumProfile& p) {
    std::ostringstream os;
    os << "index,fraction,abs_A_T\n";
    for (std::size_t i = 0; i < p.grid.size(); ++i) {
        os << p.grid[i] << ',' << exact(p.fraction(i)) << ',' << exact(p.values[i]) << '\n';
    }
    return os.str();
}

}  // namespace corrbreak
