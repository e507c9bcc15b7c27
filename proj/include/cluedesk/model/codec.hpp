#pragma once

// Canonical session encoding: UTF-8 JSON Lines with sorted keys.
//
//   {"record":"session", ...}      header, always first
//   {"record":"turn", ...}         one per completed turn, steps nested
//   {"record":"step", "turn":n,..} journal-only: a step event appended later
//   {"record":"trailer", ...}      present in exports; terminated=false mid-session
//
// decode() accepts both the canonical export and the append-only journal
// written by the chat service. See docs/session-log.md for field tables.

#include "cluedesk/model/types.hpp"

#include <string>
#include <string_view>

#include <json.hpp>

namespace cluedesk::codec {

inline constexpr int kSchemaVersion = 1;

nlohmann::json to_json(const TokenLedgerEntry& e);
nlohmann::json to_json(const UserProfile& p);
nlohmann::json to_json(const Recommendation& r);
nlohmann::json to_json(const AssistantPayload& p);
nlohmann::json to_json(const StepEvent& s);
nlohmann::json to_json(const Turn& t);
nlohmann::json to_json(const SessionConfig& c);
nlohmann::json to_json(const Configuration& c);

TokenLedgerEntry ledger_from_json(const nlohmann::json& j);
UserProfile profile_from_json(const nlohmann::json& j);
Recommendation recommendation_from_json(const nlohmann::json& j);
AssistantPayload payload_from_json(const nlohmann::json& j);
StepEvent step_from_json(const nlohmann::json& j);
Turn turn_from_json(const nlohmann::json& j);
SessionConfig session_config_from_json(const nlohmann::json& j);
Configuration configuration_from_json(const nlohmann::json& j);

std::string header_record(const ConversationState& s);
std::string turn_record(const Turn& t);
std::string step_record(std::size_t turn_index, const StepEvent& s);
std::string trailer_record(const ConversationState& s);

// Full canonical export; byte-stable for equal states.
std::string encode(const ConversationState& s);

// Throws ParseError naming the offending line. A truncated final line (a
// write torn by a crash) is dropped when `tolerate_torn_tail` is set.
ConversationState decode(std::string_view log, bool tolerate_torn_tail = false);

} // namespace cluedesk::codec
