#pragma once

#include "cluedesk/model/types.hpp"

#include <filesystem>
#include <optional>

namespace cluedesk::orchestrator {

struct OrchestratorConfig {
    double tau = 0.7;
    std::optional<double> tau_rec;  // defaults to tau
    std::size_t max_questions = 5;
    std::size_t max_reroutes = 1;   // evidence fetches per turn

    double recommendation_threshold() const { return tau_rec.value_or(tau); }

    // {"tau", "tau_rec"?, "max_questions", "max_reroutes"}; missing keys keep
    // defaults. Throws ConfigError.
    static OrchestratorConfig load(const std::filesystem::path& path);
};

struct RouteInputs {
    double d_conf = 0.0;
    double tau = 0.7;
    bool cc_available = false;
    bool informative_uncollected = false;  // some uncollected category judged useful
    bool reroute_left = true;
    std::size_t questions_asked = 0;
    std::size_t max_questions = 5;
};

// d_conf >= tau -> gen_solution; else evidence when CC can still help; else a
// question, unless the question budget is spent.
RoutingDecision decide_route(const RouteInputs& in);

} // namespace cluedesk::orchestrator
