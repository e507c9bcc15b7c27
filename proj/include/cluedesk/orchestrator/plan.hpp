#pragma once

#include "cluedesk/model/types.hpp"

#include <optional>
#include <string>

namespace cluedesk::orchestrator {

// model text -> plan. Expects {"diagnosis": str, "steps": [str, ...]}; also
// accepts the JSON wrapped in a ```json fence. Throws ProviderError.
SolutionPlan parse_plan(std::string_view model_text);

AssistantPayload step_payload(const SolutionPlan& plan);

struct Advance {
    SolutionPlan plan;
    AssistantPayload payload;
};

// Pure step machine; `clarification` is the text to show for clarify.
// Throws ContractError unless the plan is presenting or clarifying.
Advance advance_plan(const SolutionPlan& plan, StepActionKind action,
                     const std::string& clarification = {});

} // namespace cluedesk::orchestrator
