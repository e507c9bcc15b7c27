#include "cluedesk/chat/protocol.hpp"

#include "cluedesk/common/error.hpp"
#include "cluedesk/model/codec.hpp"

namespace cluedesk::chat::wire {

using nlohmann::json;

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

[[noreturn]] void bad(const std::string& what) { throw ParseError("chat-frame", 1, what); }

json payload_json(const AssistantPayload& p) {
    json j{{"type", "assistant"}, {"kind", to_string(p.kind)}, {"text", p.text}};
    if (p.step) {
        j["step"] = json{{"k", p.step->k}, {"n", p.step->n}};
    }
    if (p.diagnosis_summary) {
        j["diagnosis_summary"] = *p.diagnosis_summary;
    }
    if (p.recommendation) {
        const auto& r = *p.recommendation;
        j["recommendation"] = json{{"spc_id", r.chosen},
                                   {"spc_name", r.chosen_name},
                                   {"rationale", r.rationale},
                                   {"presentation", to_string(r.presentation)},
                                   {"trigger_turn", r.trigger_turn}};
    }
    return j;
}

json parse(std::string_view text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        bad("frame is not a JSON object");
    }
    if (!j.contains("type") || !j["type"].is_string()) {
        bad("frame lacks a string 'type'");
    }
    return j;
}

} // namespace

std::string encode(const ClientFrame& f) {
    return std::visit(
               overloaded{
                   [](const Open& o) {
                       return json{{"type", "open"},
                                   {"config", codec::to_json(o.config)},
                                   {"consent", o.consent}};
                   },
                   [](const UserMsg& m) { return json{{"type", "user_msg"}, {"text", m.text}}; },
                   [](const StepAction& a) {
                       json j{{"type", "step_action"}, {"action", to_string(a.action)}};
                       if (!a.text.empty()) {
                           j["text"] = a.text;
                       }
                       return j;
                   },
               },
               f)
        .dump();
}

std::string encode(const ServerFrame& f) {
    return std::visit(overloaded{
                          [](const Opened& o) {
                              return json{{"type", "opened"},
                                          {"session_id", o.session_id},
                                          {"cc_effectively_disabled", o.cc_effectively_disabled}};
                          },
                          [](const Assistant& a) { return payload_json(a.payload); },
                          [](const ErrorFrame& e) {
                              return json{{"type", "error"}, {"code", e.code}, {"message", e.message}};
                          },
                      },
                      f)
        .dump();
}

ClientFrame decode_client(std::string_view text) {
    const json j = parse(text);
    const auto type = j["type"].get<std::string>();
    try {
        if (type == "open") {
            Open o;
            o.config = codec::session_config_from_json(j.at("config"));
            o.consent = j.value("consent", false);
            return o;
        }
        if (type == "user_msg") {
            return UserMsg{j.at("text").get<std::string>()};
        }
        if (type == "step_action") {
            auto action = step_action_from_string(j.at("action").get<std::string>());
            if (!action) {
                bad("unknown step action");
            }
            return StepAction{*action, j.value("text", "")};
        }
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        bad(std::string("malformed ") + type + " frame: " + e.what());
    }
    bad("unknown frame type '" + type + "'");
}

ServerFrame decode_server(std::string_view text) {
    const json j = parse(text);
    const auto type = j["type"].get<std::string>();
    try {
        if (type == "opened") {
            return Opened{j.at("session_id").get<std::string>(),
                          j.value("cc_effectively_disabled", false)};
        }
        if (type == "error") {
            return ErrorFrame{j.at("code").get<std::string>(), j.value("message", "")};
        }
        if (type == "assistant") {
            AssistantPayload p;
            auto kind = payload_kind_from_string(j.at("kind").get<std::string>());
            if (!kind) {
                bad("unknown payload kind");
            }
            p.kind = *kind;
            p.text = j.at("text").get<std::string>();
            if (j.contains("step")) {
                p.step = StepPosition{j["step"].at("k").get<std::size_t>(),
                                      j["step"].at("n").get<std::size_t>()};
            }
            if (j.contains("diagnosis_summary")) {
                p.diagnosis_summary = j["diagnosis_summary"].get<std::string>();
            }
            if (j.contains("recommendation")) {
                const auto& r = j["recommendation"];
                Recommendation rec;
                rec.chosen = r.at("spc_id").get<std::string>();
                rec.chosen_name = r.at("spc_name").get<std::string>();
                rec.rationale = r.at("rationale").get<std::string>();
                auto pres = presentation_from_string(r.at("presentation").get<std::string>());
                if (!pres) {
                    bad("unknown presentation");
                }
                rec.presentation = *pres;
                rec.trigger_turn = r.at("trigger_turn").get<std::size_t>();
                p.recommendation = std::move(rec);
            }
            return Assistant{std::move(p)};
        }
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        bad(std::string("malformed ") + type + " frame: " + e.what());
    }
    bad("unknown frame type '" + type + "'");
}

} // namespace cluedesk::chat::wire
