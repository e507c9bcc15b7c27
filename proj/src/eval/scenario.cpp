#include "cluedesk/eval/scenario.hpp"

#include "cluedesk/common/error.hpp"
#include "cluedesk/common/files.hpp"
#include "cluedesk/common/text.hpp"

namespace cluedesk::eval {

using nlohmann::json;

namespace {

std::vector<std::string> string_list(const json& j, const char* key, const std::string& id) {
    auto out = j.at(key).get<std::vector<std::string>>();
    if (out.empty()) {
        throw ConfigError("scenario '" + id + "': " + key + " is empty");
    }
    return out;
}

} // namespace

std::vector<ScenarioSpec> load_scenarios(const std::filesystem::path& path,
                                         const recommender::SpcCatalog& catalog) {
    const json root = load_json_file(path);
    std::vector<ScenarioSpec> out;
    for (const auto& j : root.at("scenarios")) {
        ScenarioSpec s;
        s.id = j.at("id").get<std::string>();
        try {
            s.title = j.at("title").get<std::string>();
            s.opening_complaint = j.at("opening_complaint").get<std::string>();
            s.fixture = path.parent_path() / j.at("fixture").get<std::string>();
            s.summary = j.at("summary").get<std::string>();
            s.expected_diagnosis_tokens = string_list(j, "expected_diagnosis_tokens", s.id);
            s.minimal_solution_tokens = string_list(j, "minimal_solution_tokens", s.id);
            s.relevant_spcs = string_list(j, "relevant_spcs", s.id);
            s.evidence_dependent = j.value("evidence_dependent", true);
            const json& sc = j.at("script");
            if (sc.contains("greeting")) {
                s.script.greeting = sc["greeting"].get<std::string>();
            }
            s.script.answers = sc.value("answers", std::vector<std::string>{});
            if (sc.contains("clarify")) {
                s.script.clarify_step = sc["clarify"].at("step").get<std::size_t>();
                s.script.clarify_text = sc["clarify"].at("text").get<std::string>();
            }
            s.script.not_fixed = sc.value("not_fixed", s.script.not_fixed);
        } catch (const json::exception& e) {
            throw ConfigError("scenario '" + s.id + "': " + e.what());
        }
        if (!std::filesystem::exists(s.fixture)) {
            throw ConfigError("scenario '" + s.id + "': missing fixture " + s.fixture.string());
        }
        for (const auto& spc : s.relevant_spcs) {
            if (!catalog.find(spc)) {
                throw ConfigError("scenario '" + s.id + "': unknown SPC '" + spc + "'");
            }
        }
        out.push_back(std::move(s));
    }
    return out;
}

const ScenarioSpec& find_scenario(const std::vector<ScenarioSpec>& all, const std::string& id) {
    for (const auto& s : all) {
        if (s.id == id || s.title == id) {
            return s;
        }
    }
    throw ConfigError("unknown scenario '" + id + "'");
}

bool contains_all(std::string_view text, const std::vector<std::string>& tokens) {
    for (const auto& token : tokens) {
        bool any = false;
        for (const auto& alt : text::split(token, '|')) {
            if (!alt.empty() && text::icontains(text, alt)) {
                any = true;
                break;
            }
        }
        if (!any) {
            return false;
        }
    }
    return true;
}

UserAction ScriptedUser::count(UserAction a) {
    if (!std::holds_alternative<Stop>(a)) {
        ++actions_;
    }
    return a;
}

UserAction ScriptedUser::first() {
    if (scenario_.script.greeting) {
        return count(SendMessage{*scenario_.script.greeting});
    }
    opened_ = true;
    return count(SendMessage{scenario_.opening_complaint});
}

UserAction ScriptedUser::answer_or_complain() {
    if (answers_used_ < scenario_.script.answers.size()) {
        return count(SendMessage{scenario_.script.answers[answers_used_++]});
    }
    if (!complained_) {
        complained_ = true;
        return count(SendMessage{scenario_.script.not_fixed});
    }
    return Stop{};
}

UserAction ScriptedUser::next(const AssistantPayload& reply) {
    if (actions_ >= scenario_.script.max_actions) {
        return Stop{};
    }
    switch (reply.kind) {
    case PayloadKind::NonTroubleshootingReply:
        if (!opened_) {
            opened_ = true;
            return count(SendMessage{scenario_.opening_complaint});
        }
        return answer_or_complain();
    case PayloadKind::FollowUpQuestion:
        plan_seen_.clear();
        return answer_or_complain();
    case PayloadKind::SolutionStep: {
        if (reply.step && reply.step->k == 1 && reply.diagnosis_summary) {
            plan_seen_.clear();
        }
        plan_seen_ += reply.diagnosis_summary.value_or("") + "\n" + reply.text + "\n";
        if (contains_all(plan_seen_, scenario_.minimal_solution_tokens)) {
            return count(SendStep{StepActionKind::Resolved, {}});
        }
        const auto k = reply.step ? reply.step->k : 1;
        const auto n = reply.step ? reply.step->n : 1;
        if (!clarified_ && scenario_.script.clarify_step && *scenario_.script.clarify_step == k) {
            clarified_ = true;
            return count(SendStep{StepActionKind::Clarify, scenario_.script.clarify_text});
        }
        if (k < n) {
            return count(SendStep{StepActionKind::Next, {}});
        }
        return count(SendStep{StepActionKind::NotHelping, {}});
    }
    case PayloadKind::FinalResolution:
        // Baseline answers arrive whole; a plan that ran out also lands here.
        if (!reply.step && !contains_all(reply.text, scenario_.minimal_solution_tokens)) {
            return answer_or_complain();
        }
        return Stop{};
    }
    return Stop{};
}

} // namespace cluedesk::eval
