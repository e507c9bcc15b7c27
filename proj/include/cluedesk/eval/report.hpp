#pragma once

#include "cluedesk/eval/annotate.hpp"
#include "cluedesk/llm/cost.hpp"
#include "cluedesk/profiler/profiler.hpp"

#include <map>
#include <optional>
#include <span>

namespace cluedesk::eval {

// Column order of the relabeled-config counts table.
inline constexpr std::array<const char*, 5> kConfigLabels = {"None", "CC", "Adap", "Both",
                                                             "Baseline"};

struct SessionRow {
    std::string session_id;
    std::string scenario;
    std::string declared;
    std::string effective;
    AnnotatedOutcome outcome;
    std::uint64_t tokens = 0;
    double api_seconds = 0.0;
    double cost = 0.0;
};

struct ConfigRow {
    std::string label;  // effective configuration
    std::size_t sessions = 0;
    double effectiveness_rate = 0.0;
    std::optional<double> efficiency_mean;  // over effective sessions only
    double overwhelmingness_mean = 0.0;
    std::optional<double> mrr_at_1;         // over sessions with a recommendation
};

struct ScenarioOverhead {
    std::string scenario;
    std::size_t sessions = 0;
    llm::MeanSd tokens;
    llm::MeanSd api_seconds;
    llm::MeanSd cost;
};

struct Report {
    std::vector<SessionRow> sessions;
    std::vector<ConfigRow> configs;
    double effectiveness_with_cc = 0.0;
    double effectiveness_without_cc = 0.0;
    std::size_t sessions_with_cc = 0;
    std::size_t sessions_without_cc = 0;
    // Mean MAE after each turn across adaptive sessions, per effective config;
    // shorter sessions carry their last value forward.
    std::map<std::string, std::vector<double>> mae_trajectories;
    std::vector<llm::NodeOverheadRow> nodes;
    std::vector<ScenarioOverhead> scenarios;
    // declared label -> counts per effective label, columns as kConfigLabels.
    std::map<std::string, std::array<std::size_t, 5>> relabel_counts;
};

// `gt` enables MAE trajectories. Throws ConfigError when a log names no known
// scenario.
Report build_report(std::span<const ConversationState> logs,
                    const std::vector<ScenarioSpec>& scenarios,
                    const std::optional<profiler::GroundTruthProfile>& gt = std::nullopt);

std::string render_text(const Report& report);
std::string render_csv(const Report& report);

} // namespace cluedesk::eval
