#include "cluedesk/cc/protocol.hpp"

#include "cluedesk/common/error.hpp"

#include <json.hpp>

namespace cluedesk::cc::wire {

using nlohmann::json;

namespace {

struct Encoder {
    json operator()(const Hello& f) const {
        return {{"type", "hello"}, {"session_id", f.session_id}, {"consent", f.consent}};
    }
    json operator()(const SnapshotReady& f) const {
        return {{"type", "snapshot_ready"}, {"taken_at", f.taken_at}};
    }
    json operator()(const Query& f) const {
        return {{"type", "query"}, {"category", std::string(to_string(f.category))}};
    }
    json operator()(const Answer& f) const {
        return {{"type", "answer"},
                {"category", std::string(to_string(f.slice.category))},
                {"status", std::string(to_string(f.slice.status))},
                {"taken_at", f.slice.taken_at},
                {"payload", f.slice.payload}};
    }
    json operator()(const ErrorFrame& f) const {
        return {{"type", "error"}, {"code", f.code}, {"message", f.message}};
    }
};

[[noreturn]] void bad(const std::string& what) { throw ParseError("cc-frame", 1, what); }

InfoCategory category_field(const json& j) {
    const auto name = j.at("category").get<std::string>();
    auto c = category_from_string(name);
    if (!c) {
        bad("unknown category '" + name + "'");
    }
    return *c;
}

} // namespace

std::string encode(const Frame& frame) { return std::visit(Encoder{}, frame).dump(); }

Frame decode(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        bad(e.what());
    }
    try {
        const auto type = j.at("type").get<std::string>();
        if (type == "hello") {
            return Hello{j.at("session_id").get<std::string>(), j.at("consent").get<bool>()};
        }
        if (type == "snapshot_ready") {
            return SnapshotReady{j.at("taken_at").get<Millis>()};
        }
        if (type == "query") {
            return Query{category_field(j)};
        }
        if (type == "answer") {
            CategorySlice s;
            s.category = category_field(j);
            auto status = slice_status_from_string(j.at("status").get<std::string>());
            if (!status) {
                bad("unknown slice status");
            }
            s.status = *status;
            s.taken_at = j.at("taken_at").get<Millis>();
            s.payload = j.at("payload");
            return Answer{std::move(s)};
        }
        if (type == "error") {
            return ErrorFrame{j.at("code").get<std::string>(), j.value("message", std::string())};
        }
        bad("unknown frame type '" + type + "'");
    } catch (const json::exception& e) {
        bad(e.what());
    }
}

} // namespace cluedesk::cc::wire
