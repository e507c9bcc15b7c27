#pragma once

#include "cluedesk/model/types.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace cluedesk::llm {

enum class Role { System, User, Assistant };

std::string_view to_string(Role r);

struct Message {
    Role role = Role::User;
    std::string content;
};

struct ModelRequest {
    NodeName node = NodeName::RouteIntent;
    std::string task;  // empty for the node's primary purpose
    std::string system_prompt;
    std::vector<Message> messages;
    std::size_t max_output = 1024;
};

struct Completion {
    std::string text;
    TokenLedgerEntry usage;
};

// Implementations must be safe to call from several sessions at once.
class Provider {
public:
    virtual ~Provider() = default;
    virtual Completion complete(const ModelRequest& request) = 0;
    virtual std::vector<double> embed(std::string_view text) = 0;
};

} // namespace cluedesk::llm
