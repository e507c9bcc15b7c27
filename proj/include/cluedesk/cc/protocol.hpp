#pragma once

// CC daemon frames: one JSON object per WebSocket text frame, discriminated
// by "type". Field tables live in docs/protocol.md.

#include "cluedesk/cc/snapshot.hpp"

#include <string>
#include <string_view>
#include <variant>

namespace cluedesk::cc::wire {

struct Hello {
    std::string session_id;
    bool consent = false;
    bool operator==(const Hello&) const = default;
};

struct SnapshotReady {
    Millis taken_at = 0;
    bool operator==(const SnapshotReady&) const = default;
};

struct Query {
    InfoCategory category = InfoCategory::Processes;
    bool operator==(const Query&) const = default;
};

struct Answer {
    CategorySlice slice;
    bool operator==(const Answer&) const = default;
};

// Codes: hello_required, consent_required, not_ready, bad_frame.
struct ErrorFrame {
    std::string code;
    std::string message;
    bool operator==(const ErrorFrame&) const = default;
};

using Frame = std::variant<Hello, SnapshotReady, Query, Answer, ErrorFrame>;

std::string encode(const Frame& frame);
// Throws ParseError (line 1 of source "cc-frame") for malformed frames.
Frame decode(std::string_view text);

} // namespace cluedesk::cc::wire
