#pragma once

// Chat wire frames, one JSON object per WebSocket text frame, discriminated
// by "type". Byte layout is in docs/protocol.md.

#include "cluedesk/model/types.hpp"

#include <string>
#include <variant>

#include <json.hpp>

namespace cluedesk::chat::wire {

struct Open {
    SessionConfig config;
    bool consent = false;
};
struct UserMsg {
    std::string text;
};
struct StepAction {
    StepActionKind action = StepActionKind::Next;
    std::string text;
};

using ClientFrame = std::variant<Open, UserMsg, StepAction>;

struct Opened {
    std::string session_id;
    bool cc_effectively_disabled = false;
};
struct Assistant {
    AssistantPayload payload;
};
struct ErrorFrame {
    std::string code;
    std::string message;
};

using ServerFrame = std::variant<Opened, Assistant, ErrorFrame>;

// Error codes.
inline constexpr const char* kBadFrame = "bad_frame";
inline constexpr const char* kNotOpen = "not_open";
inline constexpr const char* kAlreadyOpen = "already_open";
inline constexpr const char* kInvalidConfig = "invalid_config";
inline constexpr const char* kInvalidAction = "invalid_action";
inline constexpr const char* kNotFound = "not_found";
inline constexpr const char* kInternal = "internal";

std::string encode(const ClientFrame& f);
std::string encode(const ServerFrame& f);
// Both throw ParseError("chat-frame", 1, ...).
ClientFrame decode_client(std::string_view text);
ServerFrame decode_server(std::string_view text);

} // namespace cluedesk::chat::wire
