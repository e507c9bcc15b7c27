#include "cluedesk/llm/provider.hpp"

namespace cluedesk::llm {

std::string_view to_string(Role r) {
    switch (r) {
    case Role::System:
        return "system";
    case Role::User:
        return "user";
    case Role::Assistant:
        return "assistant";
    }
    return "user";
}

} // namespace cluedesk::llm
