#include "corrbreak/series.hpp"

#include <cmath>
#include <utility>

#include "corrbreak/errors.hpp"

namespace corrbreak {

SeriesPair::SeriesPair(std::vector<double> x, std::vector<double> y,
                       std::vector<std::string> timestamps)
    : x_(std::move(x)), y_(std::move(y)), timestamps_(std::move(timestamps)) {
    if (x_.size() != y_.size()) {
        throw InputError("series length mismatch: x has " + std::to_string(x_.size()) +
                         " values, y has " + std::to_string(y_.size()));
    }
    if (x_.size() < 2) {
        throw InputError("a series pair needs at least 2 observations");
    }
    if (!timestamps_.empty() && timestamps_.size() != x_.size()) {
        throw InputError("timestamp count does not match series length");
    }
    for (std::size_t i = 0; i < x_.size(); ++i) {
        if (!std::isfinite(x_[i]) || !std::isfinite(y_[i])) {
            throw InputError("non-finite value at observation " + std::to_string(i + 1));
        }
    }
}

std::string SeriesPair::label(std::size_t t) const {
    if (timestamps_.empty() || t == 0 || t > timestamps_.size()) {
        return {};
    }
    return timestamps_[t - 1];
}

SeriesPair SeriesPair::swapped() const {
    return SeriesPair(y_, x_, timestamps_);
}

}  // namespace corrbreak
