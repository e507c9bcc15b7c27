#include "cluedesk/eval/annotate.hpp"

#include "cluedesk/common/text.hpp"

#include <algorithm>
#include <set>

namespace cluedesk::eval {

std::string payload_text(const AssistantPayload& p) {
    std::string out = p.diagnosis_summary.value_or("");
    if (!out.empty()) {
        out += '\n';
    }
    return out + p.text;
}

AnnotatedOutcome annotate(const ConversationState& log, const ScenarioSpec& scenario) {
    AnnotatedOutcome out;
    std::optional<std::size_t> diagnosis_at;
    std::optional<std::size_t> solution_at;
    std::set<std::string> summaries;

    auto inspect = [&](const AssistantPayload& p, std::size_t turn) {
        const std::string text = payload_text(p);
        if (!diagnosis_at && contains_all(text, scenario.expected_diagnosis_tokens)) {
            diagnosis_at = turn;
        }
        if (!solution_at && contains_all(text, scenario.minimal_solution_tokens)) {
            solution_at = turn;
        }
        if (p.diagnosis_summary) {
            const auto key = text::to_lower(text::trim(*p.diagnosis_summary));
            if (!key.empty()) {
                summaries.insert(key);
            }
        }
    };
    for (const auto& t : log.turns) {
        inspect(t.payload, t.index);
        for (const auto& s : t.steps) {
            inspect(s.payload, t.index);
        }
    }
    out.overwhelmingness = summaries.size();
    if (diagnosis_at && solution_at) {
        out.effectiveness = true;
        out.first_correct_turn = std::max(*diagnosis_at, *solution_at);
        out.efficiency = static_cast<int>(*out.first_correct_turn);
    }
    return out;
}

} // namespace cluedesk::eval
