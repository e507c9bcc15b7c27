#pragma once

// Shared vocabulary for sessions, turns, profiles, evidence and recommendations.
// Everything here is a plain value type: copyable, comparable, no shared state.

#include "cluedesk/common/clock.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace cluedesk {

// ---------------------------------------------------------------------------
// Closed enumerations
// ---------------------------------------------------------------------------

enum class NodeName {
    RouteIntent,
    HandleNonTroubleshooting,
    RouteQuery,
    CalculateDiagnosisConfidence,
    SelectSystemInfo,
    ExecuteTools,
    GenQuestion,
    GenSolution,
};

inline constexpr std::array<NodeName, 8> kAllNodes = {
    NodeName::RouteIntent,        NodeName::HandleNonTroubleshooting,
    NodeName::RouteQuery,         NodeName::CalculateDiagnosisConfidence,
    NodeName::SelectSystemInfo,   NodeName::ExecuteTools,
    NodeName::GenQuestion,        NodeName::GenSolution,
};

// execute_tools is the only node that never calls a model.
constexpr bool is_llm_backed(NodeName n) { return n != NodeName::ExecuteTools; }

enum class InfoCategory {
    Processes,
    InstalledSoftware,
    Network,
    Downloads,
    SecuritySettings,
    HardwarePeripherals,
};

inline constexpr std::array<InfoCategory, 6> kAllCategories = {
    InfoCategory::Processes,       InfoCategory::InstalledSoftware,
    InfoCategory::Network,         InfoCategory::Downloads,
    InfoCategory::SecuritySettings, InfoCategory::HardwarePeripherals,
};

enum class Intent { Troubleshooting, NonTroubleshooting };

enum class PayloadKind {
    FollowUpQuestion,
    SolutionStep,
    FinalResolution,
    NonTroubleshootingReply,
};

enum class Presentation { InChat, FixedPopup, MinimizablePopup };

enum class Injection { None, ProfileAll1, ProfileAll5, IncorrectSpc };

enum class PlanStatus { Presenting, Clarifying, Resolved, Failed };

enum class StepActionKind { Next, Clarify, Resolved, NotHelping };

enum class RoutingReason {
    LowConfCcAvailable,
    LowConfCcExhaustedOrDisabled,
    HighConf,
    ForcedMaxQuestions,
};

enum class SliceStatus { Ok, Stale, Unsupported };

std::string_view to_string(NodeName v);
std::string_view to_string(InfoCategory v);
std::string_view to_string(Intent v);
std::string_view to_string(PayloadKind v);
std::string_view to_string(Presentation v);
std::string_view to_string(Injection v);
std::string_view to_string(PlanStatus v);
std::string_view to_string(StepActionKind v);
std::string_view to_string(RoutingReason v);
std::string_view to_string(SliceStatus v);

std::optional<NodeName> node_from_string(std::string_view s);
std::optional<InfoCategory> category_from_string(std::string_view s);
std::optional<Intent> intent_from_string(std::string_view s);
std::optional<PayloadKind> payload_kind_from_string(std::string_view s);
std::optional<Presentation> presentation_from_string(std::string_view s);
std::optional<Injection> injection_from_string(std::string_view s);
std::optional<PlanStatus> plan_status_from_string(std::string_view s);
std::optional<StepActionKind> step_action_from_string(std::string_view s);
std::optional<RoutingReason> routing_reason_from_string(std::string_view s);
std::optional<SliceStatus> slice_status_from_string(std::string_view s);

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

// Five legal values: None, CC, Adap, Both, Baseline. Baseline excludes both flags.
struct Configuration {
    bool cc_enabled = false;
    bool adaptation_enabled = false;
    bool baseline = false;

    static constexpr Configuration none() { return {false, false, false}; }
    static constexpr Configuration cc() { return {true, false, false}; }
    static constexpr Configuration adap() { return {false, true, false}; }
    static constexpr Configuration both() { return {true, true, false}; }
    static constexpr Configuration baseline_vca() { return {false, false, true}; }

    constexpr bool legal() const { return !baseline || (!cc_enabled && !adaptation_enabled); }

    // "None", "CC", "Adap", "Both", "Baseline"; "Invalid" for illegal flag mixes.
    std::string label() const;
    static std::optional<Configuration> from_label(std::string_view label);

    bool operator==(const Configuration&) const = default;
};

inline constexpr std::array<Configuration, 5> kAllConfigurations = {
    Configuration::none(), Configuration::cc(), Configuration::adap(),
    Configuration::both(), Configuration::baseline_vca(),
};

// ---------------------------------------------------------------------------
// Ledger, profile, evidence
// ---------------------------------------------------------------------------

struct TokenLedgerEntry {
    NodeName node = NodeName::RouteIntent;
    std::string task;  // sub-purpose within a node, e.g. "profile", "rationale"
    std::uint64_t input_tokens = 0;
    std::uint64_t output_tokens = 0;
    double api_seconds = 0.0;
    // False when only a total is known; input_tokens then holds that total.
    bool split_known = true;

    std::uint64_t total_tokens() const { return input_tokens + output_tokens; }
    bool operator==(const TokenLedgerEntry&) const = default;
};

struct UserProfile {
    std::vector<double> values;
    std::vector<double> weights;

    static UserProfile uniform(std::size_t dims, double value, double weight);
    bool operator==(const UserProfile&) const = default;
};

struct CcAccess {
    InfoCategory category = InfoCategory::Processes;
    SliceStatus status = SliceStatus::Ok;
    Millis taken_at = 0;
    std::string evidence;  // rendered, anonymized
    bool operator==(const CcAccess&) const = default;
};

// ---------------------------------------------------------------------------
// Orchestration records
// ---------------------------------------------------------------------------

struct DiagnosisConfidence {
    double evidence_strength = 0.0;
    double diagnosis_diversity = 0.0;
    double prior_outcomes = 0.0;
    double value = 0.0;
    bool degraded = false;  // provider failed; value forced to 0
    bool operator==(const DiagnosisConfidence&) const = default;
};

struct RoutingDecision {
    NodeName next = NodeName::GenQuestion;
    RoutingReason reason = RoutingReason::LowConfCcExhaustedOrDisabled;
    bool operator==(const RoutingDecision&) const = default;
};

struct SolutionPlan {
    std::string diagnosis_summary;
    std::vector<std::string> steps;
    std::size_t cursor = 1;  // 1-based index of the step currently shown
    PlanStatus status = PlanStatus::Presenting;
    bool operator==(const SolutionPlan&) const = default;
};

struct ScoredSpc {
    std::string spc_id;
    double score = 0.0;
    bool operator==(const ScoredSpc&) const = default;
};

struct Recommendation {
    std::vector<ScoredSpc> ranked;
    std::string chosen;
    std::string chosen_name;
    std::string rationale;
    Presentation presentation = Presentation::MinimizablePopup;
    std::size_t trigger_turn = 0;
    bool injected_incorrect = false;
    bool operator==(const Recommendation&) const = default;
};

struct StepPosition {
    std::size_t k = 1;
    std::size_t n = 1;
    bool operator==(const StepPosition&) const = default;
};

struct AssistantPayload {
    PayloadKind kind = PayloadKind::NonTroubleshootingReply;
    std::string text;
    std::optional<StepPosition> step;
    std::optional<std::string> diagnosis_summary;
    std::optional<Recommendation> recommendation;
    bool operator==(const AssistantPayload&) const = default;
};

struct StepEvent {
    StepActionKind action = StepActionKind::Next;
    std::string text;  // clarification question, anonymized
    AssistantPayload payload;
    std::vector<TokenLedgerEntry> token_usage;
    std::size_t cursor_after = 1;
    PlanStatus status_after = PlanStatus::Presenting;
    Millis at = 0;
    bool operator==(const StepEvent&) const = default;
};

struct Turn {
    std::size_t index = 1;  // 1-based iteration counter
    Millis at = 0;
    std::string user_text;  // anonymized
    std::optional<Intent> intent;
    AssistantPayload payload;
    std::optional<double> d_conf;
    std::vector<DiagnosisConfidence> confidence;  // one per computation this turn
    std::vector<NodeName> nodes_visited;
    std::vector<RoutingDecision> routing;
    std::vector<CcAccess> cc_queries;
    bool profile_read = false;
    std::optional<std::string> adaptation_band;
    std::optional<UserProfile> profile_after;
    std::optional<SolutionPlan> plan;
    std::vector<StepEvent> steps;
    std::vector<TokenLedgerEntry> token_usage;
    bool failed = false;

    bool visited(NodeName n) const;
    bool operator==(const Turn&) const = default;
};

// ---------------------------------------------------------------------------
// Session
// ---------------------------------------------------------------------------

struct SessionFaults {
    bool profile_unavailable = false;  // simulates profile-store outages
    bool operator==(const SessionFaults&) const = default;
};

struct SessionConfig {
    Configuration configuration = Configuration::both();
    Presentation presentation = Presentation::MinimizablePopup;
    Injection injection = Injection::None;
    double cc_period_seconds = 5.0;
    std::uint64_t seed = 0;
    std::string scenario;  // optional label used by the evaluation harness
    SessionFaults faults;
    bool operator==(const SessionConfig&) const = default;
};

struct ConversationState {
    std::string session_id;
    SessionConfig config;
    bool cc_consent = false;
    bool cc_effectively_disabled = false;
    Millis opened_at = 0;
    UserProfile initial_profile;
    std::vector<Turn> turns;
    bool closed = false;

    const Configuration& configuration() const { return config.configuration; }
    bool cc_available() const;

    // Current profile: the last post-update snapshot, else the initial profile.
    const UserProfile& profile() const;
    std::set<InfoCategory> cc_accessed_categories() const;
    const Recommendation* recommendation() const;
    std::size_t recommendation_count() const;
    bool resolved() const;
    std::size_t follow_up_count() const;

    bool operator==(const ConversationState&) const = default;
};

} // namespace cluedesk
