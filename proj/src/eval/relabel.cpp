#include "cluedesk/eval/relabel.hpp"

namespace cluedesk::eval {

Configuration relabel_configuration(Configuration declared, bool cc_ran, bool profile_read) {
    if (declared.baseline) {
        return declared;
    }
    Configuration out = declared;
    if (declared.cc_enabled && !cc_ran) {
        out.cc_enabled = false;
    }
    if (declared.adaptation_enabled && !profile_read) {
        out.adaptation_enabled = false;
    }
    return out;
}

Configuration relabel(const ConversationState& log) {
    bool cc_ran = false;
    bool profile_read = false;
    for (const auto& t : log.turns) {
        cc_ran = cc_ran || t.visited(NodeName::ExecuteTools);
        profile_read = profile_read || t.profile_read;
    }
    return relabel_configuration(log.configuration(), cc_ran, profile_read);
}

ConversationState apply_relabel(ConversationState log) {
    log.config.configuration = relabel(log);
    return log;
}

} // namespace cluedesk::eval
