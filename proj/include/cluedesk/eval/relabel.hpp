#pragma once

#include "cluedesk/model/types.hpp"

namespace cluedesk::eval {

// Drops capabilities the session never actually used.
Configuration relabel_configuration(Configuration declared, bool cc_ran, bool profile_read);

// From the trace: cc_ran = some turn visited execute_tools, profile_read =
// some turn read the profile.
Configuration relabel(const ConversationState& log);

// Copy of the log carrying its effective configuration.
ConversationState apply_relabel(ConversationState log);

} // namespace cluedesk::eval
