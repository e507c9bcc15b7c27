#include "cluedesk/eval/stats.hpp"

#include "cluedesk/common/error.hpp"
#include "cluedesk/common/text.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cluedesk::eval {

double mean(std::span<const double> xs) {
    if (xs.empty()) {
        throw ContractError("mean of an empty sample");
    }
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double population_sd(std::span<const double> xs) {
    const double m = mean(xs);
    double ss = 0.0;
    for (double x : xs) {
        ss += (x - m) * (x - m);
    }
    return std::sqrt(ss / static_cast<double>(xs.size()));
}

std::vector<double> zscore(std::span<const double> xs) {
    const double m = mean(xs);
    const double sd = population_sd(xs);
    std::vector<double> out(xs.size(), 0.0);
    // Relative guard: identical values can leave rounding noise in sd.
    if (sd <= 1e-12 * std::max(1.0, std::abs(m))) {
        return out;
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
        out[i] = (xs[i] - m) / sd;
    }
    return out;
}

Responses zscore_normalize(const Responses& responses) {
    Responses out;
    for (const auto& [participant, values] : responses) {
        if (values.empty()) {
            throw ContractError("participant " + participant + " has no responses");
        }
        for (double v : values) {
            if (!(v >= 1.0 && v <= 5.0)) {
                throw ContractError("participant " + participant + ": Likert value out of [1,5]");
            }
        }
        out[participant] = zscore(values);
    }
    return out;
}

Responses parse_likert_csv(std::string_view csv) {
    Responses out;
    const auto lines = text::split(csv, '\n');
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::string line = text::trim(lines[i]);
        if (line.empty()) {
            continue;
        }
        const auto cols = text::split(line, ',');
        if (cols.size() < 2) {
            throw ParseError("likert csv", i + 1, "expected participant,value");
        }
        try {
            std::size_t used = 0;
            const std::string v = text::trim(cols[1]);
            const double value = std::stod(v, &used);
            if (used != v.size()) {
                throw std::invalid_argument("trailing characters");
            }
            out[text::trim(cols[0])].push_back(value);
        } catch (const std::exception&) {
            throw ParseError("likert csv", i + 1, "bad value '" + cols[1] + "'");
        }
    }
    return out;
}

} // namespace cluedesk::eval
