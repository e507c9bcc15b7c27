#pragma once

#include "cluedesk/cc/evidence.hpp"
#include "cluedesk/llm/gateway.hpp"
#include "cluedesk/model/taxonomy.hpp"
#include "cluedesk/orchestrator/routing.hpp"
#include "cluedesk/pii/anonymizer.hpp"
#include "cluedesk/recommender/ranking.hpp"

#include <functional>
#include <string>

namespace cluedesk::orchestrator {

struct Services {
    llm::Gateway& gateway;
    const pii::Anonymizer& anonymizer;
    const SubdomainTaxonomy& taxonomy;
    const recommender::SpcCatalog& catalog;
    recommender::Scorer& scorer;
    const Clock& clock;
};

// Per-session handles the state machine needs besides the state itself.
struct SessionIo {
    cc::EvidenceSource* evidence = nullptr;  // null when CC is off or unavailable
    pii::PlaceholderMap* placeholders = nullptr;
    std::function<void(const std::string&)> warn;  // degraded-path notices
};

// Stateless across sessions; all session data lives in ConversationState,
// which callers must not touch concurrently.
class Orchestrator {
public:
    Orchestrator(Services services, OrchestratorConfig config);

    // One iteration for an anonymized user message. Appends the finished
    // turn to `state` and returns it.
    const Turn& run_iteration(ConversationState& state, std::string anonymized_text,
                              SessionIo& io);

    // Applies a step action to the active plan and appends the event to the
    // plan's turn. Throws InvalidActionError when there is no active plan.
    const StepEvent& step_action(ConversationState& state, StepActionKind action,
                                 std::string anonymized_text, SessionIo& io);

    // The last turn's plan while it is presenting or clarifying.
    static Turn* active_plan_turn(ConversationState& state);

    const OrchestratorConfig& config() const { return config_; }

private:
    struct Call;

    void run_baseline(ConversationState& state, Turn& turn, SessionIo& io);
    void run_troubleshooting(ConversationState& state, Turn& turn, SessionIo& io);
    DiagnosisConfidence compute_confidence(const ConversationState& state, Turn& turn,
                                           SessionIo& io);
    std::optional<std::string> prepare_profile(const ConversationState& state, Turn& turn,
                                               NodeName node, SessionIo& io);
    void generate_question(ConversationState& state, Turn& turn, SessionIo& io);
    void generate_solution(ConversationState& state, Turn& turn, SessionIo& io);
    void fetch_evidence(ConversationState& state, Turn& turn, InfoCategory category,
                        SessionIo& io);

    Services services_;
    OrchestratorConfig config_;
};

std::vector<InfoCategory> uncollected_categories(const ConversationState& state,
                                                 const Turn& current);

} // namespace cluedesk::orchestrator
