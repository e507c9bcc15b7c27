#include "cluedesk/llm/cost.hpp"

#include <cmath>
#include <map>

namespace cluedesk::llm {

double cost_of_total_tokens(double total, const CostModel& m) {
    const double in = total * m.assumed_input_share;
    const double out = total - in;
    return (in * m.input_price_per_million + out * m.output_price_per_million) / 1e6;
}

double conversation_cost(std::span<const TokenLedgerEntry> entries, const CostModel& m) {
    double usd = 0.0;
    for (const auto& e : entries) {
        if (e.split_known) {
            usd += (static_cast<double>(e.input_tokens) * m.input_price_per_million +
                    static_cast<double>(e.output_tokens) * m.output_price_per_million) /
                   1e6;
        } else {
            usd += cost_of_total_tokens(static_cast<double>(e.total_tokens()), m);
        }
    }
    return usd;
}

MeanSd mean_sd(std::span<const double> xs) {
    MeanSd r;
    if (xs.empty()) {
        return r;
    }
    for (double x : xs) {
        r.mean += x;
    }
    r.mean /= static_cast<double>(xs.size());
    if (xs.size() > 1) {
        double ss = 0.0;
        for (double x : xs) {
            ss += (x - r.mean) * (x - r.mean);
        }
        r.sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
    }
    return r;
}

std::vector<TokenLedgerEntry> session_ledger(const ConversationState& s) {
    std::vector<TokenLedgerEntry> out;
    for (const auto& t : s.turns) {
        out.insert(out.end(), t.token_usage.begin(), t.token_usage.end());
        for (const auto& step : t.steps) {
            out.insert(out.end(), step.token_usage.begin(), step.token_usage.end());
        }
    }
    return out;
}

std::vector<NodeOverheadRow> node_overhead_report(std::span<const ConversationState> sessions) {
    std::map<NodeName, std::pair<std::vector<double>, std::vector<double>>> samples;
    for (const auto& s : sessions) {
        for (const auto& e : session_ledger(s)) {
            auto& [tokens, secs] = samples[e.node];
            tokens.push_back(static_cast<double>(e.total_tokens()));
            secs.push_back(e.api_seconds);
        }
    }
    std::vector<NodeOverheadRow> rows;
    for (NodeName n : kAllNodes) {
        auto it = samples.find(n);
        if (it == samples.end()) {
            continue;
        }
        rows.push_back({n, it->second.first.size(), mean_sd(it->second.first),
                        mean_sd(it->second.second)});
    }
    return rows;
}

} // namespace cluedesk::llm
