// Plain-text serialization of simulation specs.
//
//   # comment
//   model = var1          (var1 | dcc)
//   T = 1000
//   seed = 42
//   rho = 0.25, -0.25
//   breaks = 0.5
//
// var1 only: phi, mean (two values), mean_levels, mean_breaks.
// dcc only:  garch_x, garch_y (omega, alpha, beta), theta (theta1, theta2),
//            psi (target | rolling), psi_window.

#include <charconv>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <system_error>
#include <utility>
#include <vector>

#include "corrbreak/errors.hpp"
#include "corrbreak/simulate.hpp"

namespace corrbreak {

namespace {

std::string fmt(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string fmt_list(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) {
            out += ", ";
        }
        out += fmt(v[i]);
    }
    return out;
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

struct Entry {
    std::string value;
    std::size_t line;
};

[[noreturn]] void fail(std::size_t line, const std::string& what) {
    throw InputError("config line " + std::to_string(line) + ": " + what);
}

double to_double(std::string_view s, std::size_t line) {
    s = trim(s);
    double v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || s.empty()) {
        fail(line, "not a number: '" + std::string(s) + "'");
    }
    return v;
}

std::uint64_t to_uint(std::string_view s, std::size_t line) {
    s = trim(s);
    std::uint64_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || s.empty()) {
        fail(line, "not a nonnegative integer: '" + std::string(s) + "'");
    }
    return v;
}

std::vector<double> to_list(std::string_view s, std::size_t line) {
    std::vector<double> out;
    s = trim(s);
    if (s.empty()) {
        return out;
    }
    std::size_t pos = 0;
    while (true) {
        const auto comma = s.find(',', pos);
        out.push_back(to_double(s.substr(pos, comma - pos), line));
        if (comma == std::string_view::npos) {
            break;
        }
        pos = comma + 1;
    }
    return out;
}

class Entries {
public:
    explicit Entries(std::map<std::string, Entry> e) : e_(std::move(e)) {}

    bool has(const std::string& key) const { return e_.count(key) > 0; }

    std::optional<Entry> take(const std::string& key) {
        auto it = e_.find(key);
        if (it == e_.end()) {
            return std::nullopt;
        }
        Entry out = it->second;
        e_.erase(it);
        return out;
    }

    void expect_empty() const {
        if (!e_.empty()) {
            fail(e_.begin()->second.line, "unknown or inapplicable key '" + e_.begin()->first + "'");
        }
    }

private:
    std::map<std::string, Entry> e_;
};

template <typename Spec>
void read_common(Entries& e, Spec& s) {
    if (auto v = e.take("T")) {
        s.T = to_uint(v->value, v->line);
    }
    if (auto v = e.take("seed")) {
        s.seed = to_uint(v->value, v->line);
    }
    if (auto v = e.take("burn_in")) {
        s.burn_in = to_uint(v->value, v->line);
    }
    if (auto v = e.take("rho")) {
        s.schedule.levels = to_list(v->value, v->line);
    }
    if (auto v = e.take("breaks")) {
        s.schedule.breaks = to_list(v->value, v->line);
    }
}

template <typename Spec>
void write_common(std::ostringstream& os, const Spec& s) {
    os << "T = " << s.T << '\n'
       << "seed = " << s.seed << '\n'
       << "burn_in = " << s.burn_in << '\n'
       << "rho = " << fmt_list(s.schedule.levels) << '\n'
       << "breaks = " << fmt_list(s.schedule.breaks) << '\n';
}

std::vector<double> expect_size(std::vector<double> v, std::size_t n, std::size_t line,
                                const char* key) {
    if (v.size() != n) {
        fail(line, std::string(key) + " needs " + std::to_string(n) + " values");
    }
    return v;
}

}  // namespace

std::string to_config(const SimulationSpec& spec) {
    std::ostringstream os;
    if (const auto* v = std::get_if<Var1Spec>(&spec)) {
        os << "model = var1\n";
        write_common(os, *v);
        os << "phi = " << fmt(v->phi) << '\n'
           << "mean = " << fmt(v->mean[0]) << ", " << fmt(v->mean[1]) << '\n';
        if (v->mean_schedule) {
            os << "mean_levels = " << fmt_list(v->mean_schedule->levels) << '\n'
               << "mean_breaks = " << fmt_list(v->mean_schedule->breaks) << '\n';
        }
    } else {
        const auto& d = std::get<DccSpec>(spec);
        os << "model = dcc\n"
           << "# variance recursions use squared lagged observations\n";
        write_common(os, d);
        os << "garch_x = " << fmt(d.garch_x.omega) << ", " << fmt(d.garch_x.alpha) << ", "
           << fmt(d.garch_x.beta) << '\n'
           << "garch_y = " << fmt(d.garch_y.omega) << ", " << fmt(d.garch_y.alpha) << ", "
           << fmt(d.garch_y.beta) << '\n'
           << "theta = " << fmt(d.theta1) << ", " << fmt(d.theta2) << '\n'
           << "psi = " << (d.psi == PsiSource::Rolling ? "rolling" : "target") << '\n'
           << "psi_window = " << d.psi_window << '\n';
    }
    return os.str();
}

SimulationSpec parse_config(std::string_view text) {
    std::map<std::string, Entry> raw;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            fail(line_no, "expected 'key = value'");
        }
        std::string key(trim(line.substr(0, eq)));
        if (raw.count(key) > 0) {
            fail(line_no, "duplicate key '" + key + "'");
        }
        raw.emplace(std::move(key), Entry{std::string(trim(line.substr(eq + 1))), line_no});
    }

    Entries e(std::move(raw));
    const auto model = e.take("model");
    if (!model) {
        throw InputError("config has no 'model' key");
    }

    if (model->value == "var1") {
        Var1Spec s;
        read_common(e, s);
        if (auto v = e.take("phi")) {
            s.phi = to_double(v->value, v->line);
        }
        if (auto v = e.take("mean")) {
            const auto m = expect_size(to_list(v->value, v->line), 2, v->line, "mean");
            s.mean = {m[0], m[1]};
        }
        auto levels = e.take("mean_levels");
        auto breaks = e.take("mean_breaks");
        if (levels) {
            BreakSchedule ms;
            ms.levels = to_list(levels->value, levels->line);
            if (breaks) {
                ms.breaks = to_list(breaks->value, breaks->line);
            }
            s.mean_schedule = ms;
        } else if (breaks) {
            fail(breaks->line, "mean_breaks given without mean_levels");
        }
        e.expect_empty();
        s.validate();
        return s;
    }
    if (model->value == "dcc") {
        DccSpec s;
        read_common(e, s);
        for (auto [key, target] : {std::pair{"garch_x", &s.garch_x}, std::pair{"garch_y", &s.garch_y}}) {
            if (auto v = e.take(key)) {
                const auto p = expect_size(to_list(v->value, v->line), 3, v->line, key);
                *target = GarchParams{p[0], p[1], p[2]};
            }
        }
        if (auto v = e.take("theta")) {
            const auto t = expect_size(to_list(v->value, v->line), 2, v->line, "theta");
            s.theta1 = t[0];
            s.theta2 = t[1];
        }
        if (auto v = e.take("psi")) {
            if (v->value == "target") {
                s.psi = PsiSource::Target;
            } else if (v->value == "rolling") {
                s.psi = PsiSource::Rolling;
            } else {
                fail(v->line, "psi must be 'target' or 'rolling'");
            }
        }
        if (auto v = e.take("psi_window")) {
            s.psi_window = to_uint(v->value, v->line);
        }
        e.expect_empty();
        s.validate();
        return s;
    }
    fail(model->line, "unknown model '" + model->value + "' (expected var1 or dcc)");
}

}  // namespace corrbreak
