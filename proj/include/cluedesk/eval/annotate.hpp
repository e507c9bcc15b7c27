#pragma once

#include "cluedesk/eval/scenario.hpp"

namespace cluedesk::eval {

struct AnnotatedOutcome {
    bool effectiveness = false;
    int efficiency = -1;             // turn index of the first success, else -1
    std::size_t overwhelmingness = 0;  // distinct diagnosis summaries offered
    std::optional<std::size_t> first_correct_turn;
    bool operator==(const AnnotatedOutcome&) const = default;
};

// A payload's searchable text: its diagnosis summary followed by its text.
std::string payload_text(const AssistantPayload& p);

// Success needs one payload naming every diagnosis token and one naming every
// solution token; the turn where the second of the two first appears is the
// efficiency.
AnnotatedOutcome annotate(const ConversationState& log, const ScenarioSpec& scenario);

} // namespace cluedesk::eval
