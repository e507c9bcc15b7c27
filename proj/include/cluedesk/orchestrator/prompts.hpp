#pragma once

// Request builders, one per node. Text handed in here is already anonymized.
// Each node sees only what it needs: intent routing reads the current message
// alone, the diagnostic nodes read the transcript and collected evidence.

#include "cluedesk/llm/provider.hpp"
#include "cluedesk/model/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cluedesk::orchestrator::prompts {

struct Context {
    const ConversationState& state;  // completed turns
    const Turn& current;             // turn in progress
    std::optional<std::string> profile_block;  // only when adaptation is on
};

std::string transcript(const ConversationState& state, const Turn& current);
std::string evidence_block(const ConversationState& state, const Turn& current);
std::string outcomes_block(const ConversationState& state);
std::string category_list(const std::vector<InfoCategory>& categories);

llm::ModelRequest intent(const Turn& current);
llm::ModelRequest non_troubleshooting(const Turn& current);
llm::ModelRequest confidence(const Context& ctx);
llm::ModelRequest route_query(const Context& ctx, const std::vector<InfoCategory>& remaining);
llm::ModelRequest select_info(const Context& ctx, const std::vector<InfoCategory>& remaining);
llm::ModelRequest question(const Context& ctx);
llm::ModelRequest solution(const Context& ctx);
llm::ModelRequest clarify(const SolutionPlan& plan, std::string_view user_question);
llm::ModelRequest baseline(const ConversationState& state, const Turn& current);

} // namespace cluedesk::orchestrator::prompts
