#include "cluedesk/model/codec.hpp"

#include "cluedesk/common/error.hpp"
#include "cluedesk/common/text.hpp"

namespace cluedesk::codec {

using nlohmann::json;

namespace {

template <typename E, typename Parse>
E parse_enum(const json& j, const char* what, Parse parse) {
    const auto s = j.get<std::string>();
    if (auto v = parse(s)) {
        return *v;
    }
    throw ConfigError(std::string("unknown ") + what + " '" + s + "'");
}

template <typename T>
json optional_json(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

json ledger_array(const std::vector<TokenLedgerEntry>& entries) {
    json arr = json::array();
    for (const auto& e : entries) {
        arr.push_back(to_json(e));
    }
    return arr;
}

std::vector<TokenLedgerEntry> ledger_vector(const json& j) {
    std::vector<TokenLedgerEntry> out;
    for (const auto& e : j) {
        out.push_back(ledger_from_json(e));
    }
    return out;
}

json plan_json(const SolutionPlan& p) {
    return json{{"diagnosis_summary", p.diagnosis_summary},
                {"steps", p.steps},
                {"cursor", p.cursor},
                {"status", to_string(p.status)}};
}

SolutionPlan plan_from_json(const json& j) {
    SolutionPlan p;
    p.diagnosis_summary = j.at("diagnosis_summary").get<std::string>();
    p.steps = j.at("steps").get<std::vector<std::string>>();
    p.cursor = j.at("cursor").get<std::size_t>();
    p.status = parse_enum<PlanStatus>(j.at("status"), "plan status", plan_status_from_string);
    return p;
}

json confidence_json(const DiagnosisConfidence& c) {
    return json{{"evidence_strength", c.evidence_strength},
                {"diagnosis_diversity", c.diagnosis_diversity},
                {"prior_outcomes", c.prior_outcomes},
                {"value", c.value},
                {"degraded", c.degraded}};
}

DiagnosisConfidence confidence_from_json(const json& j) {
    DiagnosisConfidence c;
    c.evidence_strength = j.at("evidence_strength").get<double>();
    c.diagnosis_diversity = j.at("diagnosis_diversity").get<double>();
    c.prior_outcomes = j.at("prior_outcomes").get<double>();
    c.value = j.at("value").get<double>();
    c.degraded = j.value("degraded", false);
    return c;
}

} // namespace

json to_json(const TokenLedgerEntry& e) {
    return json{{"node", to_string(e.node)},     {"task", e.task},
                {"input_tokens", e.input_tokens}, {"output_tokens", e.output_tokens},
                {"api_seconds", e.api_seconds},   {"split_known", e.split_known}};
}

TokenLedgerEntry ledger_from_json(const json& j) {
    TokenLedgerEntry e;
    e.node = parse_enum<NodeName>(j.at("node"), "node", node_from_string);
    e.task = j.value("task", "");
    e.input_tokens = j.at("input_tokens").get<std::uint64_t>();
    e.output_tokens = j.at("output_tokens").get<std::uint64_t>();
    e.api_seconds = j.at("api_seconds").get<double>();
    e.split_known = j.value("split_known", true);
    return e;
}

json to_json(const UserProfile& p) { return json{{"values", p.values}, {"weights", p.weights}}; }

UserProfile profile_from_json(const json& j) {
    return UserProfile{j.at("values").get<std::vector<double>>(),
                       j.at("weights").get<std::vector<double>>()};
}

json to_json(const Recommendation& r) {
    json ranked = json::array();
    for (const auto& s : r.ranked) {
        ranked.push_back(json{{"spc_id", s.spc_id}, {"score", s.score}});
    }
    return json{{"ranked", ranked},
                {"chosen", r.chosen},
                {"chosen_name", r.chosen_name},
                {"rationale", r.rationale},
                {"presentation", to_string(r.presentation)},
                {"trigger_turn", r.trigger_turn},
                {"injected_incorrect", r.injected_incorrect}};
}

Recommendation recommendation_from_json(const json& j) {
    Recommendation r;
    for (const auto& s : j.at("ranked")) {
        r.ranked.push_back(ScoredSpc{s.at("spc_id").get<std::string>(), s.at("score").get<double>()});
    }
    r.chosen = j.at("chosen").get<std::string>();
    r.chosen_name = j.value("chosen_name", "");
    r.rationale = j.at("rationale").get<std::string>();
    r.presentation =
        parse_enum<Presentation>(j.at("presentation"), "presentation", presentation_from_string);
    r.trigger_turn = j.at("trigger_turn").get<std::size_t>();
    r.injected_incorrect = j.value("injected_incorrect", false);
    return r;
}

json to_json(const AssistantPayload& p) {
    json j{{"kind", to_string(p.kind)}, {"text", p.text}};
    j["step"] = p.step ? json{{"k", p.step->k}, {"n", p.step->n}} : json(nullptr);
    j["diagnosis_summary"] = optional_json(p.diagnosis_summary);
    j["recommendation"] = p.recommendation ? to_json(*p.recommendation) : json(nullptr);
    return j;
}

AssistantPayload payload_from_json(const json& j) {
    AssistantPayload p;
    p.kind = parse_enum<PayloadKind>(j.at("kind"), "payload kind", payload_kind_from_string);
    p.text = j.at("text").get<std::string>();
    if (j.contains("step") && !j["step"].is_null()) {
        p.step = StepPosition{j["step"].at("k").get<std::size_t>(),
                              j["step"].at("n").get<std::size_t>()};
    }
    if (j.contains("diagnosis_summary") && !j["diagnosis_summary"].is_null()) {
        p.diagnosis_summary = j["diagnosis_summary"].get<std::string>();
    }
    if (j.contains("recommendation") && !j["recommendation"].is_null()) {
        p.recommendation = recommendation_from_json(j["recommendation"]);
    }
    return p;
}

json to_json(const StepEvent& s) {
    return json{{"action", to_string(s.action)},
                {"text", s.text},
                {"payload", to_json(s.payload)},
                {"token_usage", ledger_array(s.token_usage)},
                {"cursor_after", s.cursor_after},
                {"status_after", to_string(s.status_after)},
                {"at", s.at}};
}

StepEvent step_from_json(const json& j) {
    StepEvent s;
    s.action = parse_enum<StepActionKind>(j.at("action"), "step action", step_action_from_string);
    s.text = j.value("text", "");
    s.payload = payload_from_json(j.at("payload"));
    s.token_usage = ledger_vector(j.value("token_usage", json::array()));
    s.cursor_after = j.at("cursor_after").get<std::size_t>();
    s.status_after =
        parse_enum<PlanStatus>(j.at("status_after"), "plan status", plan_status_from_string);
    s.at = j.value("at", Millis{0});
    return s;
}

json to_json(const Turn& t) {
    json j;
    j["index"] = t.index;
    j["at"] = t.at;
    j["user_text"] = t.user_text;
    j["intent"] = t.intent ? json(to_string(*t.intent)) : json(nullptr);
    j["payload"] = to_json(t.payload);
    j["d_conf"] = optional_json(t.d_conf);
    json conf = json::array();
    for (const auto& c : t.confidence) {
        conf.push_back(confidence_json(c));
    }
    j["confidence"] = conf;
    json nodes = json::array();
    for (NodeName n : t.nodes_visited) {
        nodes.push_back(to_string(n));
    }
    j["nodes_visited"] = nodes;
    json routing = json::array();
    for (const auto& r : t.routing) {
        routing.push_back(json{{"next", to_string(r.next)}, {"reason", to_string(r.reason)}});
    }
    j["routing"] = routing;
    json cc = json::array();
    for (const auto& q : t.cc_queries) {
        cc.push_back(json{{"category", to_string(q.category)},
                          {"status", to_string(q.status)},
                          {"taken_at", q.taken_at},
                          {"evidence", q.evidence}});
    }
    j["cc_queries"] = cc;
    j["profile_read"] = t.profile_read;
    j["adaptation_band"] = optional_json(t.adaptation_band);
    j["profile_after"] = t.profile_after ? to_json(*t.profile_after) : json(nullptr);
    j["plan"] = t.plan ? plan_json(*t.plan) : json(nullptr);
    json steps = json::array();
    for (const auto& s : t.steps) {
        steps.push_back(to_json(s));
    }
    j["steps"] = steps;
    j["token_usage"] = ledger_array(t.token_usage);
    j["failed"] = t.failed;
    return j;
}

Turn turn_from_json(const json& j) {
    Turn t;
    t.index = j.at("index").get<std::size_t>();
    t.at = j.value("at", Millis{0});
    t.user_text = j.at("user_text").get<std::string>();
    if (j.contains("intent") && !j["intent"].is_null()) {
        t.intent = parse_enum<Intent>(j["intent"], "intent", intent_from_string);
    }
    t.payload = payload_from_json(j.at("payload"));
    if (j.contains("d_conf") && !j["d_conf"].is_null()) {
        t.d_conf = j["d_conf"].get<double>();
    }
    for (const auto& c : j.value("confidence", json::array())) {
        t.confidence.push_back(confidence_from_json(c));
    }
    for (const auto& n : j.at("nodes_visited")) {
        t.nodes_visited.push_back(parse_enum<NodeName>(n, "node", node_from_string));
    }
    for (const auto& r : j.value("routing", json::array())) {
        t.routing.push_back(RoutingDecision{
            parse_enum<NodeName>(r.at("next"), "node", node_from_string),
            parse_enum<RoutingReason>(r.at("reason"), "routing reason", routing_reason_from_string)});
    }
    for (const auto& q : j.value("cc_queries", json::array())) {
        t.cc_queries.push_back(CcAccess{
            parse_enum<InfoCategory>(q.at("category"), "category", category_from_string),
            parse_enum<SliceStatus>(q.at("status"), "slice status", slice_status_from_string),
            q.at("taken_at").get<Millis>(), q.value("evidence", "")});
    }
    t.profile_read = j.value("profile_read", false);
    if (j.contains("adaptation_band") && !j["adaptation_band"].is_null()) {
        t.adaptation_band = j["adaptation_band"].get<std::string>();
    }
    if (j.contains("profile_after") && !j["profile_after"].is_null()) {
        t.profile_after = profile_from_json(j["profile_after"]);
    }
    if (j.contains("plan") && !j["plan"].is_null()) {
        t.plan = plan_from_json(j["plan"]);
    }
    for (const auto& s : j.value("steps", json::array())) {
        t.steps.push_back(step_from_json(s));
    }
    t.token_usage = ledger_vector(j.value("token_usage", json::array()));
    t.failed = j.value("failed", false);
    return t;
}

json to_json(const Configuration& c) {
    return json{{"label", c.label()},
                {"cc_enabled", c.cc_enabled},
                {"adaptation_enabled", c.adaptation_enabled},
                {"baseline", c.baseline}};
}

Configuration configuration_from_json(const json& j) {
    if (j.is_string()) {
        if (auto c = Configuration::from_label(j.get<std::string>())) {
            return *c;
        }
        throw ConfigError("unknown configuration '" + j.get<std::string>() + "'");
    }
    // Flags are authoritative; they may describe an illegal mix that
    // validate_state is expected to report.
    return Configuration{j.at("cc_enabled").get<bool>(), j.at("adaptation_enabled").get<bool>(),
                         j.at("baseline").get<bool>()};
}

json to_json(const SessionConfig& c) {
    return json{{"configuration", to_json(c.configuration)},
                {"presentation", to_string(c.presentation)},
                {"injection", to_string(c.injection)},
                {"cc_period_seconds", c.cc_period_seconds},
                {"seed", c.seed},
                {"scenario", c.scenario},
                {"faults", json{{"profile_unavailable", c.faults.profile_unavailable}}}};
}

SessionConfig session_config_from_json(const json& j) {
    SessionConfig c;
    c.configuration = configuration_from_json(j.at("configuration"));
    if (j.contains("presentation")) {
        c.presentation =
            parse_enum<Presentation>(j["presentation"], "presentation", presentation_from_string);
    }
    if (j.contains("injection")) {
        c.injection = parse_enum<Injection>(j["injection"], "injection", injection_from_string);
    }
    c.cc_period_seconds = j.value("cc_period_seconds", 5.0);
    c.seed = j.value("seed", std::uint64_t{0});
    c.scenario = j.value("scenario", "");
    if (j.contains("faults")) {
        c.faults.profile_unavailable = j["faults"].value("profile_unavailable", false);
    }
    return c;
}

std::string header_record(const ConversationState& s) {
    json j{{"record", "session"},
           {"schema", kSchemaVersion},
           {"session_id", s.session_id},
           {"config", to_json(s.config)},
           {"cc_consent", s.cc_consent},
           {"cc_effectively_disabled", s.cc_effectively_disabled},
           {"opened_at", s.opened_at},
           {"initial_profile", to_json(s.initial_profile)}};
    return j.dump();
}

std::string turn_record(const Turn& t) {
    json j = to_json(t);
    j["record"] = "turn";
    return j.dump();
}

std::string step_record(std::size_t turn_index, const StepEvent& s) {
    json j = to_json(s);
    j["record"] = "step";
    j["turn"] = turn_index;
    return j.dump();
}

std::string trailer_record(const ConversationState& s) {
    return json{{"record", "trailer"}, {"terminated", s.closed}, {"turns", s.turns.size()}}.dump();
}

std::string encode(const ConversationState& s) {
    std::string out = header_record(s);
    out += '\n';
    for (const auto& t : s.turns) {
        out += turn_record(t);
        out += '\n';
    }
    out += trailer_record(s);
    out += '\n';
    return out;
}

ConversationState decode(std::string_view log, bool tolerate_torn_tail) {
    ConversationState s;
    bool have_header = false;
    const auto lines = text::split(log, '\n');
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::string& line = lines[i];
        if (text::trim(line).empty()) {
            continue;
        }
        const std::size_t line_no = i + 1;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error& e) {
            // A torn tail never ends in '\n', so it is the very last element.
            if (tolerate_torn_tail && i + 1 == lines.size()) {
                break;
            }
            throw ParseError("session log", line_no, e.what());
        }
        try {
            const auto record = j.at("record").get<std::string>();
            if (record == "session") {
                if (have_header) {
                    throw ConfigError("duplicate session header");
                }
                have_header = true;
                if (j.value("schema", 0) != kSchemaVersion) {
                    throw ConfigError("unsupported schema version");
                }
                s.session_id = j.at("session_id").get<std::string>();
                s.config = session_config_from_json(j.at("config"));
                s.cc_consent = j.value("cc_consent", false);
                s.cc_effectively_disabled = j.value("cc_effectively_disabled", false);
                s.opened_at = j.value("opened_at", Millis{0});
                s.initial_profile = profile_from_json(j.at("initial_profile"));
            } else if (!have_header) {
                throw ConfigError("record before session header");
            } else if (record == "turn") {
                s.turns.push_back(turn_from_json(j));
            } else if (record == "step") {
                const auto turn_index = j.at("turn").get<std::size_t>();
                Turn* target = nullptr;
                for (auto& t : s.turns) {
                    if (t.index == turn_index) {
                        target = &t;
                    }
                }
                if (target == nullptr || !target->plan) {
                    throw ConfigError("step record for a turn without a plan");
                }
                StepEvent ev = step_from_json(j);
                target->plan->cursor = ev.cursor_after;
                target->plan->status = ev.status_after;
                target->steps.push_back(std::move(ev));
            } else if (record == "trailer") {
                s.closed = j.value("terminated", false);
            } else {
                throw ConfigError("unknown record type '" + record + "'");
            }
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception& e) {
            throw ParseError("session log", line_no, e.what());
        }
    }
    if (!have_header) {
        throw ParseError("session log", 1, "missing session header");
    }
    return s;
}

} // namespace cluedesk::codec
