#include "cluedesk/model/validate.hpp"

#include <cmath>
#include <sstream>

namespace cluedesk {

namespace {

void check_profile(const UserProfile& p, std::size_t dims, const std::string& where,
                   std::vector<std::string>& out) {
    if (p.values.size() != dims || p.weights.size() != dims) {
        std::ostringstream msg;
        msg << where << ": profile has " << p.values.size() << " values and " << p.weights.size()
            << " weights, expected " << dims;
        out.push_back(msg.str());
        return;
    }
    for (std::size_t i = 0; i < dims; ++i) {
        const double v = p.values[i];
        if (!std::isfinite(v) || v < kProfileMin || v > kProfileMax) {
            std::ostringstream msg;
            msg << where << ": profile value " << v << " in dimension " << i
                << " outside range [1,5]";
            out.push_back(msg.str());
        }
        const double w = p.weights[i];
        if (!std::isfinite(w) || w < kPriorWeight) {
            std::ostringstream msg;
            msg << where << ": profile weight " << w << " in dimension " << i
                << " below prior weight " << kPriorWeight;
            out.push_back(msg.str());
        }
    }
}

void check_ledger(const std::vector<TokenLedgerEntry>& entries, const std::string& where,
                  std::vector<std::string>& out) {
    for (const auto& e : entries) {
        if (!std::isfinite(e.api_seconds) || e.api_seconds < 0.0) {
            out.push_back(where + ": ledger entry for " + std::string(to_string(e.node)) +
                          " has invalid api_seconds");
        }
        if (e.node == NodeName::ExecuteTools && e.total_tokens() != 0) {
            out.push_back(where + ": execute_tools ledger entry carries tokens");
        }
    }
}

void check_plan(const SolutionPlan& plan, const std::string& where, std::vector<std::string>& out) {
    if (plan.steps.empty()) {
        out.push_back(where + ": solution plan has no steps");
    } else if (plan.cursor < 1 || plan.cursor > plan.steps.size()) {
        out.push_back(where + ": solution plan cursor out of range");
    }
}

} // namespace

std::vector<std::string> validate_state(const ConversationState& s, std::size_t dims) {
    std::vector<std::string> out;
    const Configuration& cfg = s.configuration();

    if (!cfg.legal()) {
        out.push_back("configuration: baseline combined with cc or adaptation flags");
    }
    check_profile(s.initial_profile, dims, "initial profile", out);

    if (!cfg.cc_enabled && !s.cc_accessed_categories().empty()) {
        out.push_back("cc invariant: cc_accessed_categories nonempty while cc is disabled");
    }
    if (s.recommendation_count() > 1) {
        out.push_back("recommendation invariant: more than one recommendation in session");
    }

    for (std::size_t i = 0; i < s.turns.size(); ++i) {
        const Turn& t = s.turns[i];
        const std::string where = "turn " + std::to_string(t.index);
        if (t.index != i + 1) {
            out.push_back(where + ": index not contiguous (expected " + std::to_string(i + 1) +
                          ")");
        }
        if (t.intent == Intent::Troubleshooting && !cfg.baseline && !t.d_conf && !t.failed) {
            out.push_back(where + ": troubleshooting turn without d_conf");
        }
        if (t.d_conf && (!std::isfinite(*t.d_conf) || *t.d_conf < 0.0 || *t.d_conf > 1.0)) {
            out.push_back(where + ": d_conf outside [0,1]");
        }
        if (!cfg.baseline && !t.nodes_visited.empty() &&
            t.nodes_visited.front() != NodeName::RouteIntent) {
            out.push_back(where + ": node trace does not begin with route_intent");
        }
        if (!cfg.cc_enabled && t.visited(NodeName::ExecuteTools)) {
            out.push_back(where + ": execute_tools visited while cc is disabled");
        }
        if (t.profile_after) {
            check_profile(*t.profile_after, dims, where, out);
        }
        if (t.plan) {
            check_plan(*t.plan, where, out);
        }
        if (t.payload.recommendation && t.payload.recommendation->trigger_turn > s.turns.size()) {
            out.push_back(where + ": recommendation trigger_turn beyond session length");
        }
        check_ledger(t.token_usage, where, out);
        for (const auto& step : t.steps) {
            check_ledger(step.token_usage, where + " step", out);
        }
    }
    return out;
}

} // namespace cluedesk
