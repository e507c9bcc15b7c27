#pragma once

// Scenario file (JSON): {"scenarios": [{
//   "id", "title", "opening_complaint", "fixture" (relative to the file),
//   "summary", "expected_diagnosis_tokens": [..], "minimal_solution_tokens": [..],
//   "relevant_spcs": [..], "evidence_dependent": bool,
//   "script": {"greeting"?, "answers": [..], "clarify"?: {"step": k, "text": ..},
//              "not_fixed": "..."}}]}
// A token may list alternatives separated by '|'; any one of them matches.

#include "cluedesk/model/types.hpp"
#include "cluedesk/recommender/catalog.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace cluedesk::eval {

struct UserScript {
    std::optional<std::string> greeting;
    std::vector<std::string> answers;  // replies to follow-up questions, in order
    std::optional<std::size_t> clarify_step;
    std::string clarify_text;
    std::string not_fixed = "It still isn't fixed.";
    std::size_t max_actions = 14;
};

struct ScenarioSpec {
    std::string id;
    std::string title;
    std::string opening_complaint;
    std::filesystem::path fixture;
    std::string summary;  // reference diagnosis prose, used for ranking checks
    std::vector<std::string> expected_diagnosis_tokens;
    std::vector<std::string> minimal_solution_tokens;
    std::vector<std::string> relevant_spcs;
    bool evidence_dependent = true;
    UserScript script;
};

// Throws ConfigError for missing fields, a missing fixture file, or an SPC
// absent from `catalog`.
std::vector<ScenarioSpec> load_scenarios(const std::filesystem::path& path,
                                         const recommender::SpcCatalog& catalog);
const ScenarioSpec& find_scenario(const std::vector<ScenarioSpec>& all, const std::string& id);

// Case-insensitive; '|' separates alternatives.
bool contains_all(std::string_view text, const std::vector<std::string>& tokens);

struct SendMessage {
    std::string text;
};
struct SendStep {
    StepActionKind action;
    std::string text;
};
struct Stop {};
using UserAction = std::variant<SendMessage, SendStep, Stop>;

// Plays the user's side from the assistant's last payload. Presses next
// through a plan, reports success once the scenario's fix has been shown,
// otherwise says the plan did not help and complains once more.
class ScriptedUser {
public:
    explicit ScriptedUser(const ScenarioSpec& scenario) : scenario_(scenario) {}

    UserAction first();
    UserAction next(const AssistantPayload& reply);
    std::size_t actions() const { return actions_; }

private:
    UserAction count(UserAction a);
    UserAction answer_or_complain();

    const ScenarioSpec& scenario_;
    bool opened_ = false;
    bool complained_ = false;
    bool clarified_ = false;
    std::size_t answers_used_ = 0;
    std::size_t actions_ = 0;
    std::string plan_seen_;
};

} // namespace cluedesk::eval
