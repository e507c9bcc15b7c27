#include "cluedesk/orchestrator/plan.hpp"

#include "cluedesk/common/error.hpp"
#include "cluedesk/common/text.hpp"

#include <json.hpp>

namespace cluedesk::orchestrator {

using nlohmann::json;

SolutionPlan parse_plan(std::string_view model_text) {
    std::string body(model_text);
    if (auto open = body.find('{'), close = body.rfind('}');
        open != std::string::npos && close != std::string::npos && close > open) {
        body = body.substr(open, close - open + 1);
    }
    const json j = json::parse(body, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        throw ProviderError("solution is not a JSON object");
    }
    SolutionPlan plan;
    if (!j.contains("diagnosis") || !j["diagnosis"].is_string() || !j.contains("steps") ||
        !j["steps"].is_array()) {
        throw ProviderError("solution lacks diagnosis or steps");
    }
    plan.diagnosis_summary = text::trim(j["diagnosis"].get<std::string>());
    for (const auto& s : j["steps"]) {
        if (s.is_string() && !text::trim(s.get<std::string>()).empty()) {
            plan.steps.push_back(text::trim(s.get<std::string>()));
        }
    }
    if (plan.diagnosis_summary.empty() || plan.steps.empty()) {
        throw ProviderError("solution has an empty diagnosis or no steps");
    }
    return plan;
}

AssistantPayload step_payload(const SolutionPlan& plan) {
    AssistantPayload p;
    p.kind = PayloadKind::SolutionStep;
    p.text = plan.steps.at(plan.cursor - 1);
    p.step = StepPosition{plan.cursor, plan.steps.size()};
    return p;
}

Advance advance_plan(const SolutionPlan& plan, StepActionKind action,
                     const std::string& clarification) {
    if (plan.status != PlanStatus::Presenting && plan.status != PlanStatus::Clarifying) {
        throw ContractError("plan is already " + std::string(to_string(plan.status)));
    }
    Advance a{plan, {}};
    const std::size_t n = plan.steps.size();
    switch (action) {
    case StepActionKind::Next:
        if (plan.cursor < n) {
            a.plan.cursor = plan.cursor + 1;
            a.plan.status = PlanStatus::Presenting;
            a.payload = step_payload(a.plan);
        } else {
            a.plan.status = PlanStatus::Resolved;
            a.payload.kind = PayloadKind::FinalResolution;
            a.payload.text = "That was the last step. The issue should now be resolved.";
            a.payload.step = StepPosition{n, n};
        }
        break;
    case StepActionKind::Clarify:
        a.plan.status = PlanStatus::Clarifying;
        a.payload.kind = PayloadKind::SolutionStep;
        a.payload.text = clarification;
        a.payload.step = StepPosition{plan.cursor, n};
        break;
    case StepActionKind::Resolved:
        a.plan.status = PlanStatus::Resolved;
        a.payload.kind = PayloadKind::FinalResolution;
        a.payload.text = "Glad that fixed it.";
        a.payload.step = StepPosition{plan.cursor, n};
        break;
    case StepActionKind::NotHelping:
        a.plan.status = PlanStatus::Failed;
        a.payload.kind = PayloadKind::FollowUpQuestion;
        a.payload.text = "Sorry that did not help. What happened when you tried it?";
        break;
    }
    return a;
}

} // namespace cluedesk::orchestrator
