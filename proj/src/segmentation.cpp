#include "corrbreak/segmentation.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <utility>

#include "corrbreak/errors.hpp"
#include "corrbreak/kolmogorov.hpp"
#include "corrbreak/moments.hpp"

namespace corrbreak {

void SegmentationConfig::validate() const {
    if (!(alpha0 > 0.0 && alpha0 < 1.0)) {
        throw InputError("alpha0 must lie in (0, 1)");
    }
    if (n_min < 10) {
        throw InputError("n_min must be at least 10");
    }
    if (hac.rule == HacConfig::Bandwidth::Fixed && hac.fixed_h < 1) {
        throw InputError("fixed bandwidth must be at least 1");
    }
}

const char* to_string(Step s) noexcept {
    return s == Step::Detect ? "detect" : "refine";
}

const char* to_string(TestStatus s) noexcept {
    switch (s) {
        case TestStatus::Tested: return "tested";
        case TestStatus::TooShort: return "too_short";
        case TestStatus::Degenerate: return "degenerate";
        case TestStatus::NonPositiveVariance: return "nonpositive_variance";
    }
    return "unknown";
}

namespace {

struct Window {
    std::size_t start;
    std::size_t end;
    [[nodiscard]] std::size_t length() const { return end - start + 1; }
};

class Segmenter {
public:
    Segmenter(const SeriesPair& pair, const SegmentationConfig& cfg, const ProfileSink& sink)
        : pair_(pair), cfg_(cfg), sink_(sink) {
        report_.T = pair.size();
    }

    ChangePointReport run() {
        const std::size_t T = pair_.size();
        const std::size_t cap = cfg_.max_changepoints > 0 ? cfg_.max_changepoints
                                                          : std::max<std::size_t>(1, T / cfg_.n_min);

        const IterationRecord first = test(Step::Detect, Window{1, T}, 0);
        if (first.significant) {
            points_.push_back(first.candidate);
            split_rounds(Window{1, first.candidate}, Window{first.candidate + 1, T}, cap);
            if (points_.size() > 1) {
                refine();
            }
        }
        finish();
        return std::move(report_);
    }

private:
    void split_rounds(Window left, Window right, std::size_t cap) {
        std::vector<Window> work{left, right};
        while (!work.empty() && points_.size() < cap) {
            std::vector<Window> next;
            for (const Window& w : work) {
                if (points_.size() >= cap) {
                    break;
                }
                if (w.length() < cfg_.n_min) {
                    continue;
                }
                const IterationRecord rec = test(Step::Detect, w, points_.size());
                if (rec.significant) {
                    points_.insert(std::upper_bound(points_.begin(), points_.end(), rec.candidate),
                                   rec.candidate);
                    next.push_back(Window{w.start, rec.candidate});
                    next.push_back(Window{rec.candidate + 1, w.end});
                }
            }
            work = std::move(next);
        }
    }

    void refine() {
        const std::size_t level = points_.size();  // largest count reached
        const std::size_t max_passes = 10 * points_.size();
        const std::size_t T = pair_.size();
        bool changed = true;
        while (changed && report_.refinement_passes < max_passes) {
            ++report_.refinement_passes;
            changed = false;
            for (std::size_t i = 0; i < points_.size(); ++i) {
                const std::size_t start = (i == 0 ? 0 : points_[i - 1]) + 1;
                const std::size_t end = i + 1 < points_.size() ? points_[i + 1] : T;
                const IterationRecord rec = test(Step::Refine, Window{start, end}, level);
                if (!rec.significant) {
                    points_.erase(points_.begin() + static_cast<std::ptrdiff_t>(i));
                    changed = true;
                    break;
                }
                if (rec.candidate != points_[i]) {
                    points_[i] = rec.candidate;
                    changed = true;
                }
            }
        }
        report_.refinement_capped = changed;
    }

    IterationRecord test(Step step, Window w, std::size_t level) {
        IterationRecord rec;
        rec.step = step;
        rec.start = w.start;
        rec.end = w.end;
        rec.level = level;
        rec.alpha = alpha_schedule(cfg_.alpha0, level);
        rec.critical_value = critical(level);
        try {
            const CusumProfile p = profile_window(pair_, w.start, w.end, cfg_.hac, cfg_.n_min);
            rec.statistic = p.statistic;
            rec.candidate = estimate_changepoint(p);
            rec.significant = rec.statistic > rec.critical_value;
            if (sink_) {
                sink_(report_.iterations.size(), p);
            }
        } catch (const SegmentTooShort&) {
            rec.status = TestStatus::TooShort;
        } catch (const DegenerateSegment&) {
            rec.status = TestStatus::Degenerate;
        } catch (const NonPositiveVariance&) {
            rec.status = TestStatus::NonPositiveVariance;
        }
        report_.iterations.push_back(rec);
        return rec;
    }

    double critical(std::size_t level) {
        auto it = critical_.find(level);
        if (it == critical_.end()) {
            const double alpha = alpha_schedule(cfg_.alpha0, level);
            it = critical_.emplace(level, critical_value(alpha)).first;
            report_.alpha_schedule_used.push_back(AlphaLevel{level, alpha, it->second});
        }
        return it->second;
    }

    void finish() {
        const std::size_t T = pair_.size();
        report_.changepoints = points_;
        report_.fractions.clear();
        for (const std::size_t c : points_) {
            report_.fractions.push_back(static_cast<double>(c) / static_cast<double>(T));
        }
        std::size_t start = 1;
        for (std::size_t k = 0; k <= points_.size(); ++k) {
            const std::size_t end = k < points_.size() ? points_[k] : T;
            const SegmentMoments m = accumulate(pair_, start, end);
            if (m.degenerate()) {
                report_.segment_correlations.emplace_back(std::nullopt);
            } else {
                report_.segment_correlations.emplace_back(pearson(m));
            }
            start = end + 1;
        }
    }

    const SeriesPair& pair_;
    const SegmentationConfig& cfg_;
    const ProfileSink& sink_;
    ChangePointReport report_;
    std::vector<std::size_t> points_;
    std::map<std::size_t, double> critical_;
};

}  // namespace

ChangePointReport detect(const SeriesPair& pair, const SegmentationConfig& cfg,
                         const ProfileSink& sink) {
    cfg.validate();
    if (pair.size() < 2 * cfg.n_min) {
        throw InputError("series of length " + std::to_string(pair.size()) +
                         " is shorter than 2 * n_min = " + std::to_string(2 * cfg.n_min));
    }
    return Segmenter(pair, cfg, sink).run();
}

}  // namespace corrbreak
