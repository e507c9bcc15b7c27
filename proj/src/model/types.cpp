#include "cluedesk/model/types.hpp"

#include <utility>

namespace cluedesk {

namespace {

template <typename E, std::size_t N>
using NameTable = std::array<std::pair<E, std::string_view>, N>;

constexpr NameTable<NodeName, 8> kNodeNames{{
    {NodeName::RouteIntent, "route_intent"},
    {NodeName::HandleNonTroubleshooting, "handle_non_troubleshooting"},
    {NodeName::RouteQuery, "route_query"},
    {NodeName::CalculateDiagnosisConfidence, "calculate_diagnosis_confidence"},
    {NodeName::SelectSystemInfo, "select_system_info"},
    {NodeName::ExecuteTools, "execute_tools"},
    {NodeName::GenQuestion, "gen_question"},
    {NodeName::GenSolution, "gen_solution"},
}};

constexpr NameTable<InfoCategory, 6> kCategoryNames{{
    {InfoCategory::Processes, "processes"},
    {InfoCategory::InstalledSoftware, "installed_software"},
    {InfoCategory::Network, "network"},
    {InfoCategory::Downloads, "downloads"},
    {InfoCategory::SecuritySettings, "security_settings"},
    {InfoCategory::HardwarePeripherals, "hardware_peripherals"},
}};

constexpr NameTable<Intent, 2> kIntentNames{{
    {Intent::Troubleshooting, "troubleshooting"},
    {Intent::NonTroubleshooting, "non_troubleshooting"},
}};

constexpr NameTable<PayloadKind, 4> kPayloadNames{{
    {PayloadKind::FollowUpQuestion, "follow_up_question"},
    {PayloadKind::SolutionStep, "solution_step"},
    {PayloadKind::FinalResolution, "final_resolution"},
    {PayloadKind::NonTroubleshootingReply, "non_troubleshooting_reply"},
}};

constexpr NameTable<Presentation, 3> kPresentationNames{{
    {Presentation::InChat, "in_chat"},
    {Presentation::FixedPopup, "fixed_popup"},
    {Presentation::MinimizablePopup, "minimizable_popup"},
}};

constexpr NameTable<Injection, 4> kInjectionNames{{
    {Injection::None, "none"},
    {Injection::ProfileAll1, "profile_all1"},
    {Injection::ProfileAll5, "profile_all5"},
    {Injection::IncorrectSpc, "incorrect_spc"},
}};

constexpr NameTable<PlanStatus, 4> kPlanStatusNames{{
    {PlanStatus::Presenting, "presenting"},
    {PlanStatus::Clarifying, "clarifying"},
    {PlanStatus::Resolved, "resolved"},
    {PlanStatus::Failed, "failed"},
}};

constexpr NameTable<StepActionKind, 4> kStepActionNames{{
    {StepActionKind::Next, "next"},
    {StepActionKind::Clarify, "clarify"},
    {StepActionKind::Resolved, "resolved"},
    {StepActionKind::NotHelping, "not_helping"},
}};

constexpr NameTable<RoutingReason, 4> kReasonNames{{
    {RoutingReason::LowConfCcAvailable, "low_conf_cc_available"},
    {RoutingReason::LowConfCcExhaustedOrDisabled, "low_conf_cc_exhausted_or_disabled"},
    {RoutingReason::HighConf, "high_conf"},
    {RoutingReason::ForcedMaxQuestions, "forced_max_questions"},
}};

constexpr NameTable<SliceStatus, 3> kSliceNames{{
    {SliceStatus::Ok, "ok"},
    {SliceStatus::Stale, "stale"},
    {SliceStatus::Unsupported, "unsupported"},
}};

template <typename E, std::size_t N>
std::string_view name_of(const NameTable<E, N>& table, E v) {
    for (const auto& [value, name] : table) {
        if (value == v) {
            return name;
        }
    }
    return "?";
}

template <typename E, std::size_t N>
std::optional<E> value_of(const NameTable<E, N>& table, std::string_view s) {
    for (const auto& [value, name] : table) {
        if (name == s) {
            return value;
        }
    }
    return std::nullopt;
}

} // namespace

std::string_view to_string(NodeName v) { return name_of(kNodeNames, v); }
std::string_view to_string(InfoCategory v) { return name_of(kCategoryNames, v); }
std::string_view to_string(Intent v) { return name_of(kIntentNames, v); }
std::string_view to_string(PayloadKind v) { return name_of(kPayloadNames, v); }
std::string_view to_string(Presentation v) { return name_of(kPresentationNames, v); }
std::string_view to_string(Injection v) { return name_of(kInjectionNames, v); }
std::string_view to_string(PlanStatus v) { return name_of(kPlanStatusNames, v); }
std::string_view to_string(StepActionKind v) { return name_of(kStepActionNames, v); }
std::string_view to_string(RoutingReason v) { return name_of(kReasonNames, v); }
std::string_view to_string(SliceStatus v) { return name_of(kSliceNames, v); }

std::optional<NodeName> node_from_string(std::string_view s) { return value_of(kNodeNames, s); }
std::optional<InfoCategory> category_from_string(std::string_view s) {
    return value_of(kCategoryNames, s);
}
std::optional<Intent> intent_from_string(std::string_view s) { return value_of(kIntentNames, s); }
std::optional<PayloadKind> payload_kind_from_string(std::string_view s) {
    return value_of(kPayloadNames, s);
}
std::optional<Presentation> presentation_from_string(std::string_view s) {
    return value_of(kPresentationNames, s);
}
std::optional<Injection> injection_from_string(std::string_view s) {
    return value_of(kInjectionNames, s);
}
std::optional<PlanStatus> plan_status_from_string(std::string_view s) {
    return value_of(kPlanStatusNames, s);
}
std::optional<StepActionKind> step_action_from_string(std::string_view s) {
    return value_of(kStepActionNames, s);
}
std::optional<RoutingReason> routing_reason_from_string(std::string_view s) {
    return value_of(kReasonNames, s);
}
std::optional<SliceStatus> slice_status_from_string(std::string_view s) {
    return value_of(kSliceNames, s);
}

std::string Configuration::label() const {
    if (!legal()) {
        return "Invalid";
    }
    if (baseline) {
        return "Baseline";
    }
    if (cc_enabled && adaptation_enabled) {
        return "Both";
    }
    if (cc_enabled) {
        return "CC";
    }
    if (adaptation_enabled) {
        return "Adap";
    }
    return "None";
}

std::optional<Configuration> Configuration::from_label(std::string_view label) {
    for (const auto& c : kAllConfigurations) {
        if (c.label() == label) {
            return c;
        }
    }
    return std::nullopt;
}

UserProfile UserProfile::uniform(std::size_t dims, double value, double weight) {
    return UserProfile{std::vector<double>(dims, value), std::vector<double>(dims, weight)};
}

bool Turn::visited(NodeName n) const {
    for (NodeName v : nodes_visited) {
        if (v == n) {
            return true;
        }
    }
    return false;
}

bool ConversationState::cc_available() const {
    return configuration().cc_enabled && cc_consent && !cc_effectively_disabled;
}

const UserProfile& ConversationState::profile() const {
    for (auto it = turns.rbegin(); it != turns.rend(); ++it) {
        if (it->profile_after) {
            return *it->profile_after;
        }
    }
    return initial_profile;
}

std::set<InfoCategory> ConversationState::cc_accessed_categories() const {
    std::set<InfoCategory> out;
    for (const auto& t : turns) {
        for (const auto& q : t.cc_queries) {
            out.insert(q.category);
        }
    }
    return out;
}

const Recommendation* ConversationState::recommendation() const {
    for (const auto& t : turns) {
        if (t.payload.recommendation) {
            return &*t.payload.recommendation;
        }
    }
    return nullptr;
}

std::size_t ConversationState::recommendation_count() const {
    std::size_t n = 0;
    for (const auto& t : turns) {
        if (t.payload.recommendation) {
            ++n;
        }
        for (const auto& s : t.steps) {
            if (s.payload.recommendation) {
                ++n;
            }
        }
    }
    return n;
}

bool ConversationState::resolved() const {
    for (const auto& t : turns) {
        if (t.plan && t.plan->status == PlanStatus::Resolved) {
            return true;
        }
    }
    return false;
}

std::size_t ConversationState::follow_up_count() const {
    std::size_t n = 0;
    for (const auto& t : turns) {
        if (t.payload.kind == PayloadKind::FollowUpQuestion) {
            ++n;
        }
    }
    return n;
}

} // namespace cluedesk
