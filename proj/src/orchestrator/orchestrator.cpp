#include "cluedesk/orchestrator/orchestrator.hpp"

#include "cluedesk/common/error.hpp"
#include "cluedesk/common/text.hpp"
#include "cluedesk/orchestrator/plan.hpp"
#include "cluedesk/orchestrator/prompts.hpp"
#include "cluedesk/profiler/profiler.hpp"
#include "cluedesk/recommender/recommender.hpp"

#include <algorithm>
#include <cstdio>

namespace cluedesk::orchestrator {

using nlohmann::json;

namespace {

constexpr const char* kFallbackQuestion =
    "Could you share more details about when the issue started?";
constexpr const char* kFallbackGreeting =
    "Hello! I can help with computer and security problems. What is going on with your device?";
constexpr const char* kApology =
    "Sorry, something went wrong while preparing a solution. Please describe the problem again.";

void warn(SessionIo& io, const std::string& msg) {
    if (io.warn) {
        io.warn(msg);
    }
}

// Sends through the gateway and books the ledger entry on `ledger`. Provider
// failures are booked as zero-token entries so every visited node keeps one.
std::optional<llm::Completion> call(llm::Gateway& gw, const llm::ModelRequest& req,
                                    std::vector<TokenLedgerEntry>& ledger, SessionIo& io) {
    try {
        auto c = gw.complete(req);
        ledger.push_back(c.usage);
        return c;
    } catch (const PrivacyViolation&) {
        throw;
    } catch (const std::exception& e) {
        TokenLedgerEntry failed;
        failed.node = req.node;
        failed.task = req.task;
        ledger.push_back(failed);
        warn(io, std::string(to_string(req.node)) + " call failed: " + e.what());
        return std::nullopt;
    }
}

std::optional<json> parse_object(std::string_view text) {
    std::string body(text);
    const auto open = body.find_first_of("{[");
    const auto close = body.find_last_of("}]");
    if (open == std::string::npos || close == std::string::npos || close < open) {
        return std::nullopt;
    }
    json j = json::parse(body.substr(open, close - open + 1), nullptr, false);
    if (j.is_discarded()) {
        return std::nullopt;
    }
    return j;
}

std::string recommendation_context(const ConversationState& state, const Turn& turn,
                                   const std::string& summary) {
    std::string ctx = summary;
    for (const auto& t : state.turns) {
        ctx += " " + t.user_text;
    }
    ctx += " " + turn.user_text;
    return ctx;
}

std::string format_profile_block(const std::vector<double>& summary,
                                 const SubdomainTaxonomy& taxonomy, const std::string& band) {
    std::string out = "User proficiency band: " + band + "\nDomain levels:";
    for (std::size_t d = 0; d < summary.size(); ++d) {
        char buf[16];
        std::snprintf(buf, sizeof buf, "%.2f", summary[d]);
        out += "\n- " + taxonomy.domains()[d].name + ": " + buf;
    }
    return out;
}

} // namespace

std::vector<InfoCategory> uncollected_categories(const ConversationState& state,
                                                 const Turn& current) {
    auto collected = state.cc_accessed_categories();
    for (const auto& q : current.cc_queries) {
        collected.insert(q.category);
    }
    std::vector<InfoCategory> out;
    for (InfoCategory c : kAllCategories) {
        if (!collected.contains(c)) {
            out.push_back(c);
        }
    }
    return out;
}

Orchestrator::Orchestrator(Services services, OrchestratorConfig config)
    : services_(services), config_(config) {}

Turn* Orchestrator::active_plan_turn(ConversationState& state) {
    if (state.turns.empty()) {
        return nullptr;
    }
    Turn& last = state.turns.back();
    if (last.plan && (last.plan->status == PlanStatus::Presenting ||
                      last.plan->status == PlanStatus::Clarifying)) {
        return &last;
    }
    return nullptr;
}

const Turn& Orchestrator::run_iteration(ConversationState& state, std::string text,
                                        SessionIo& io) {
    if (state.closed) {
        throw ContractError("session " + state.session_id + " is closed");
    }
    Turn turn;
    turn.index = state.turns.size() + 1;
    turn.at = services_.clock.now();
    turn.user_text = std::move(text);
    if (state.configuration().baseline) {
        run_baseline(state, turn, io);
    } else {
        run_troubleshooting(state, turn, io);
    }
    state.turns.push_back(std::move(turn));
    return state.turns.back();
}

void Orchestrator::run_baseline(ConversationState& state, Turn& turn, SessionIo& io) {
    turn.nodes_visited.push_back(NodeName::GenSolution);
    auto c = call(services_.gateway, prompts::baseline(state, turn), turn.token_usage, io);
    if (!c || text::trim(c->text).empty()) {
        turn.failed = true;
        turn.payload.kind = PayloadKind::NonTroubleshootingReply;
        turn.payload.text = kApology;
        return;
    }
    turn.payload.kind = PayloadKind::FinalResolution;
    turn.payload.text = text::trim(c->text);
    // The baseline has no plan; its opening sentence stands in for the diagnosis.
    const auto sentences = text::sentences(turn.payload.text);
    const std::string summary = sentences.empty() ? turn.payload.text : sentences.front();
    turn.payload.diagnosis_summary = summary;
    if (state.recommendation() == nullptr) {
        recommender::RecommendOptions opts{state.config.presentation,
                                           state.config.injection == Injection::IncorrectSpc,
                                           state.config.seed};
        auto built = recommender::build_recommendation(
            recommendation_context(state, turn, turn.payload.text), summary, turn.index,
            services_.catalog, services_.scorer, services_.gateway, opts);
        if (built.usage) {
            turn.token_usage.push_back(*built.usage);
        }
        turn.payload.recommendation = std::move(built.recommendation);
    }
}

void Orchestrator::run_troubleshooting(ConversationState& state, Turn& turn, SessionIo& io) {
    auto& gw = services_.gateway;

    turn.nodes_visited.push_back(NodeName::RouteIntent);
    Intent intent = Intent::Troubleshooting;
    if (auto c = call(gw, prompts::intent(turn), turn.token_usage, io)) {
        const std::string answer = text::to_lower(c->text);
        if (answer.find("non_troubleshooting") != std::string::npos ||
            answer.find("non-troubleshooting") != std::string::npos) {
            intent = Intent::NonTroubleshooting;
        }
    }
    turn.intent = intent;

    if (intent == Intent::NonTroubleshooting) {
        turn.nodes_visited.push_back(NodeName::HandleNonTroubleshooting);
        auto c = call(gw, prompts::non_troubleshooting(turn), turn.token_usage, io);
        turn.payload.kind = PayloadKind::NonTroubleshootingReply;
        turn.payload.text = c && !text::trim(c->text).empty() ? text::trim(c->text)
                                                              : kFallbackGreeting;
        return;
    }

    auto conf = compute_confidence(state, turn, io);
    std::size_t reroutes = 0;
    RoutingDecision decision;
    while (true) {
        turn.nodes_visited.push_back(NodeName::RouteQuery);
        const auto remaining = uncollected_categories(state, turn);
        bool informative = false;
        prompts::Context ctx{state, turn, std::nullopt};
        if (auto c = call(gw, prompts::route_query(ctx, remaining), turn.token_usage, io)) {
            auto j = parse_object(c->text);
            informative = j && j->is_object() ? j->value("cc_informative", true) : true;
        }
        RouteInputs in;
        in.d_conf = conf.value;
        in.tau = config_.tau;
        in.cc_available = state.cc_available() && io.evidence != nullptr;
        in.informative_uncollected = informative && !remaining.empty();
        in.reroute_left = reroutes < config_.max_reroutes;
        in.questions_asked = state.follow_up_count();
        in.max_questions = config_.max_questions;
        decision = decide_route(in);
        turn.routing.push_back(decision);
        if (decision.next != NodeName::SelectSystemInfo) {
            break;
        }

        turn.nodes_visited.push_back(NodeName::SelectSystemInfo);
        InfoCategory chosen = remaining.front();
        if (auto c = call(gw, prompts::select_info(ctx, remaining), turn.token_usage, io)) {
            if (auto j = parse_object(c->text)) {
                const json& list = j->is_object() && j->contains("categories") ? (*j)["categories"]
                                                                              : *j;
                if (list.is_array()) {
                    for (const auto& item : list) {
                        if (!item.is_string()) {
                            continue;
                        }
                        auto cat = category_from_string(item.get<std::string>());
                        if (cat && std::find(remaining.begin(), remaining.end(), *cat) !=
                                       remaining.end()) {
                            chosen = *cat;
                            break;
                        }
                    }
                }
            }
        }
        fetch_evidence(state, turn, chosen, io);
        ++reroutes;
        conf = compute_confidence(state, turn, io);
    }

    if (decision.next == NodeName::GenQuestion) {
        generate_question(state, turn, io);
    } else {
        generate_solution(state, turn, io);
    }
}

DiagnosisConfidence Orchestrator::compute_confidence(const ConversationState& state, Turn& turn,
                                                     SessionIo& io) {
    turn.nodes_visited.push_back(NodeName::CalculateDiagnosisConfidence);
    DiagnosisConfidence conf;
    prompts::Context ctx{state, turn, std::nullopt};
    auto c = call(services_.gateway, prompts::confidence(ctx), turn.token_usage, io);
    std::optional<json> j = c ? parse_object(c->text) : std::nullopt;
    auto sub = [&](const char* key) -> std::optional<double> {
        if (!j || !j->is_object() || !j->contains(key) || !(*j)[key].is_number()) {
            return std::nullopt;
        }
        return std::clamp((*j)[key].get<double>(), 0.0, 1.0);
    };
    auto e = sub("evidence_strength");
    auto d = sub("diagnosis_diversity");
    auto p = sub("prior_outcomes");
    if (e && d && p) {
        conf.evidence_strength = *e;
        conf.diagnosis_diversity = *d;
        conf.prior_outcomes = *p;
        conf.value = (*e + *d + *p) / 3.0;
    } else {
        conf.degraded = true;
        conf.value = 0.0;
        if (c) {
            warn(io, "diagnosis confidence reply unusable; treating as 0");
        }
    }
    turn.confidence.push_back(conf);
    turn.d_conf = conf.value;
    return conf;
}

void Orchestrator::fetch_evidence(ConversationState& state, Turn& turn, InfoCategory category,
                                  SessionIo& io) {
    turn.nodes_visited.push_back(NodeName::ExecuteTools);
    try {
        auto slice = io.evidence->query(category);
        CcAccess access;
        access.category = category;
        access.status = slice.status;
        access.taken_at = slice.taken_at;
        const std::string rendered = cc::render_slice(slice);
        access.evidence = io.placeholders
                              ? services_.anonymizer.anonymize(rendered, *io.placeholders).text
                              : rendered;
        turn.cc_queries.push_back(std::move(access));
    } catch (const TransportError& e) {
        state.cc_effectively_disabled = true;
        warn(io, std::string("clue collector unreachable: ") + e.what());
    } catch (const Error& e) {
        warn(io, std::string("clue collector query failed: ") + e.what());
    }
}

std::optional<std::string> Orchestrator::prepare_profile(const ConversationState& state,
                                                         Turn& turn, NodeName node,
                                                         SessionIo& io) {
    if (state.config.faults.profile_unavailable) {
        warn(io, "profile store unavailable");
        return std::nullopt;
    }
    const bool frozen = state.config.injection == Injection::ProfileAll1 ||
                        state.config.injection == Injection::ProfileAll5;
    UserProfile profile = state.profile();
    if (!frozen) {
        auto ex = profiler::extract_observations(turn.user_text, services_.gateway,
                                                 services_.taxonomy, node);
        if (ex.usage) {
            turn.token_usage.push_back(*ex.usage);
        } else {
            TokenLedgerEntry failed;
            failed.node = node;
            failed.task = "profile";
            turn.token_usage.push_back(failed);
        }
        if (!ex.warning.empty()) {
            warn(io, ex.warning);
        }
        profile = profiler::update_profile(std::move(profile), ex.observations);
        turn.profile_after = profile;
    }
    if (!state.configuration().adaptation_enabled) {
        return std::nullopt;
    }
    const auto summary = profiler::domain_summary(profile, services_.taxonomy);
    double mean = 0.0;
    for (double v : summary) {
        mean += v;
    }
    mean /= static_cast<double>(summary.size());
    const std::string band = profiler::band_of(mean);
    turn.profile_read = true;
    turn.adaptation_band = band;
    return format_profile_block(summary, services_.taxonomy, band);
}

void Orchestrator::generate_question(ConversationState& state, Turn& turn, SessionIo& io) {
    auto block = prepare_profile(state, turn, NodeName::GenQuestion, io);
    turn.nodes_visited.push_back(NodeName::GenQuestion);
    prompts::Context ctx{state, turn, block};
    auto c = call(services_.gateway, prompts::question(ctx), turn.token_usage, io);
    turn.payload.kind = PayloadKind::FollowUpQuestion;
    std::string q = c ? text::trim(c->text) : "";
    turn.payload.text = q.empty() ? kFallbackQuestion : q;
}

void Orchestrator::generate_solution(ConversationState& state, Turn& turn, SessionIo& io) {
    auto block = prepare_profile(state, turn, NodeName::GenSolution, io);
    turn.nodes_visited.push_back(NodeName::GenSolution);
    prompts::Context ctx{state, turn, block};
    auto c = call(services_.gateway, prompts::solution(ctx), turn.token_usage, io);
    SolutionPlan plan;
    try {
        if (!c) {
            throw ProviderError("no completion");
        }
        plan = parse_plan(c->text);
    } catch (const ProviderError& e) {
        warn(io, std::string("solution unusable: ") + e.what());
        turn.failed = true;
        turn.payload.kind = PayloadKind::NonTroubleshootingReply;
        turn.payload.text = kApology;
        return;
    }
    turn.payload = step_payload(plan);
    turn.payload.diagnosis_summary = plan.diagnosis_summary;
    const double d_conf = turn.d_conf.value_or(0.0);
    if (recommender::should_trigger(state, d_conf, config_.recommendation_threshold(),
                                    NodeName::GenSolution)) {
        recommender::RecommendOptions opts{state.config.presentation,
                                           state.config.injection == Injection::IncorrectSpc,
                                           state.config.seed};
        auto built = recommender::build_recommendation(
            recommendation_context(state, turn, plan.diagnosis_summary), plan.diagnosis_summary,
            turn.index, services_.catalog, services_.scorer, services_.gateway, opts);
        if (built.usage) {
            turn.token_usage.push_back(*built.usage);
        } else {
            TokenLedgerEntry failed;
            failed.node = NodeName::GenSolution;
            failed.task = "rationale";
            turn.token_usage.push_back(failed);
        }
        turn.payload.recommendation = std::move(built.recommendation);
    }
    turn.plan = std::move(plan);
}

const StepEvent& Orchestrator::step_action(ConversationState& state, StepActionKind action,
                                           std::string text, SessionIo& io) {
    Turn* turn = active_plan_turn(state);
    if (!turn) {
        throw InvalidActionError("no active solution plan");
    }
    StepEvent ev;
    ev.action = action;
    ev.text = std::move(text);
    ev.at = services_.clock.now();
    std::string clarification;
    if (action == StepActionKind::Clarify) {
        auto c = call(services_.gateway, prompts::clarify(*turn->plan, ev.text), ev.token_usage,
                      io);
        clarification = c && !text::trim(c->text).empty()
                            ? text::trim(c->text)
                            : "Here is that step again: " + turn->plan->steps.at(turn->plan->cursor - 1);
    }
    auto adv = advance_plan(*turn->plan, action, clarification);
    ev.payload = std::move(adv.payload);
    ev.cursor_after = adv.plan.cursor;
    ev.status_after = adv.plan.status;
    *turn->plan = std::move(adv.plan);
    turn->steps.push_back(std::move(ev));
    return turn->steps.back();
}

} // namespace cluedesk::orchestrator
