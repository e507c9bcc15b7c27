#include "cluedesk/orchestrator/prompts.hpp"

namespace cluedesk::orchestrator::prompts {

using llm::ModelRequest;
using llm::Role;

namespace {

ModelRequest make(NodeName node, std::string task, std::string system, std::size_t max_output) {
    ModelRequest r;
    r.node = node;
    r.task = std::move(task);
    r.system_prompt = std::move(system);
    r.max_output = max_output;
    return r;
}

void add_diagnostic_context(ModelRequest& r, const Context& ctx) {
    r.messages.push_back({Role::User, transcript(ctx.state, ctx.current)});
    r.messages.push_back({Role::User, evidence_block(ctx.state, ctx.current)});
    if (ctx.profile_block) {
        r.messages.push_back({Role::User, *ctx.profile_block});
    }
}

} // namespace

std::string transcript(const ConversationState& state, const Turn& current) {
    std::string out = "Conversation:\n";
    for (const auto& t : state.turns) {
        out += "User: " + t.user_text + "\n";
        if (t.payload.diagnosis_summary) {
            out += "Assistant diagnosis: " + *t.payload.diagnosis_summary + "\n";
        }
        out += "Assistant: " + t.payload.text + "\n";
    }
    out += "User: " + current.user_text + "\n";
    return out;
}

std::string evidence_block(const ConversationState& state, const Turn& current) {
    std::string body;
    auto add = [&](const Turn& t) {
        for (const auto& q : t.cc_queries) {
            body += q.evidence;
        }
    };
    for (const auto& t : state.turns) {
        add(t);
    }
    add(current);
    return body.empty() ? "Device evidence: none collected" : "Device evidence:\n" + body;
}

std::string outcomes_block(const ConversationState& state) {
    std::string out;
    for (const auto& t : state.turns) {
        if (t.plan) {
            out += "- " + t.plan->diagnosis_summary + " (" +
                   std::string(to_string(t.plan->status)) + ")\n";
        }
    }
    return out.empty() ? "Earlier solution attempts: none" : "Earlier solution attempts:\n" + out;
}

std::string category_list(const std::vector<InfoCategory>& categories) {
    std::string out;
    for (InfoCategory c : categories) {
        if (!out.empty()) {
            out += ", ";
        }
        out += std::string(to_string(c));
    }
    return out.empty() ? "none" : out;
}

ModelRequest intent(const Turn& current) {
    auto r = make(NodeName::RouteIntent, "",
                  "Classify the user's message. Answer with exactly one word: "
                  "troubleshooting if it asks for help with a computer, network or security "
                  "problem, otherwise non_troubleshooting.",
                  4);
    r.messages.push_back({Role::User, current.user_text});
    return r;
}

ModelRequest non_troubleshooting(const Turn& current) {
    auto r = make(NodeName::HandleNonTroubleshooting, "",
                  "You are a technical support assistant. Reply briefly and politely, then "
                  "invite the user to describe any computer or security problem.",
                  80);
    r.messages.push_back({Role::User, current.user_text});
    return r;
}

ModelRequest confidence(const Context& ctx) {
    auto r = make(NodeName::CalculateDiagnosisConfidence, "",
                  "Rate how confidently the problem can be diagnosed now. Reply with JSON "
                  "{\"evidence_strength\": x, \"diagnosis_diversity\": y, \"prior_outcomes\": z}, "
                  "each in [0,1]: evidence_strength is how directly the facts point to a cause, "
                  "diagnosis_diversity is 1 when a single diagnosis remains plausible and 0 when "
                  "many do, prior_outcomes is lower when earlier attempts in this conversation "
                  "failed.",
                  60);
    add_diagnostic_context(r, ctx);
    r.messages.push_back({Role::User, outcomes_block(ctx.state)});
    return r;
}

ModelRequest route_query(const Context& ctx, const std::vector<InfoCategory>& remaining) {
    auto r = make(NodeName::RouteQuery, "",
                  "Decide whether reading more device evidence could sharpen the diagnosis. "
                  "Reply with JSON {\"cc_informative\": true|false}.",
                  12);
    r.messages.push_back({Role::User, transcript(ctx.state, ctx.current)});
    r.messages.push_back({Role::User, "Uncollected evidence categories: " + category_list(remaining)});
    return r;
}

ModelRequest select_info(const Context& ctx, const std::vector<InfoCategory>& remaining) {
    auto r = make(NodeName::SelectSystemInfo, "",
                  "Choose which device evidence to read next. Reply with a JSON array of "
                  "category names, most informative first.",
                  40);
    r.messages.push_back({Role::User, transcript(ctx.state, ctx.current)});
    r.messages.push_back({Role::User, "Uncollected evidence categories: " + category_list(remaining)});
    return r;
}

ModelRequest question(const Context& ctx) {
    auto r = make(NodeName::GenQuestion, "",
                  "Ask exactly one short follow-up question that would most help diagnose the "
                  "problem. Match the wording to the user's proficiency when it is given.",
                  60);
    add_diagnostic_context(r, ctx);
    return r;
}

ModelRequest solution(const Context& ctx) {
    auto r = make(NodeName::GenSolution, "",
                  "Give the single most suitable diagnosis and a short step-by-step fix. Reply "
                  "with JSON {\"diagnosis\": \"...\", \"steps\": [\"...\", ...]}. For basic users "
                  "use graphical menus only; for advanced users command-line checks are fine.",
                  400);
    add_diagnostic_context(r, ctx);
    r.messages.push_back({Role::User, outcomes_block(ctx.state)});
    return r;
}

ModelRequest clarify(const SolutionPlan& plan, std::string_view user_question) {
    auto r = make(NodeName::GenSolution, "clarify",
                  "The user is following a step-by-step fix and asked about the current step. "
                  "Explain that step more simply in two or three sentences.",
                  120);
    r.messages.push_back({Role::User, "Diagnosis: " + plan.diagnosis_summary + "\nStep " +
                                          std::to_string(plan.cursor) + " of " +
                                          std::to_string(plan.steps.size()) + ": " +
                                          plan.steps.at(plan.cursor - 1)});
    r.messages.push_back({Role::User, "Question: " + std::string(user_question)});
    return r;
}

ModelRequest baseline(const ConversationState& state, const Turn& current) {
    auto r = make(NodeName::GenSolution, "baseline",
                  "You are a technical support assistant for computer and security problems. "
                  "Answer the user's latest message helpfully.",
                  600);
    r.messages.push_back({Role::User, transcript(state, current)});
    return r;
}

} // namespace cluedesk::orchestrator::prompts
