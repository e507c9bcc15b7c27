#include "cluedesk/orchestrator/routing.hpp"

#include "cluedesk/common/error.hpp"
#include "cluedesk/common/files.hpp"

namespace cluedesk::orchestrator {

OrchestratorConfig OrchestratorConfig::load(const std::filesystem::path& path) {
    const auto j = load_json_file(path);
    OrchestratorConfig c;
    try {
        c.tau = j.value("tau", c.tau);
        if (j.contains("tau_rec") && !j["tau_rec"].is_null()) {
            c.tau_rec = j["tau_rec"].get<double>();
        }
        c.max_questions = j.value("max_questions", c.max_questions);
        c.max_reroutes = j.value("max_reroutes", c.max_reroutes);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("malformed orchestrator config: " + std::string(e.what()));
    }
    if (!(c.tau >= 0.0 && c.tau <= 1.0) ||
        (c.tau_rec && !(*c.tau_rec >= 0.0 && *c.tau_rec <= 1.0))) {
        throw ConfigError("orchestrator thresholds must lie in [0,1]");
    }
    return c;
}

RoutingDecision decide_route(const RouteInputs& in) {
    if (in.d_conf >= in.tau) {
        return {NodeName::GenSolution, RoutingReason::HighConf};
    }
    if (in.cc_available && in.informative_uncollected && in.reroute_left) {
        return {NodeName::SelectSystemInfo, RoutingReason::LowConfCcAvailable};
    }
    if (in.questions_asked >= in.max_questions) {
        return {NodeName::GenSolution, RoutingReason::ForcedMaxQuestions};
    }
    return {NodeName::GenQuestion, RoutingReason::LowConfCcExhaustedOrDisabled};
}

} // namespace cluedesk::orchestrator
