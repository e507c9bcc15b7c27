#pragma once

#include "cluedesk/chat/service.hpp"
#include "cluedesk/net/ws.hpp"

namespace cluedesk::chat {

// One session per connection: the first frame must be open. Upgrades
// without "Authorization: Bearer <token>" are refused with 401.
class ChatServer {
public:
    ChatServer(ChatService& service, std::string host, std::uint16_t port, std::string token);

    void start() { server_.start(); }
    void stop() { server_.stop(); }
    std::uint16_t port() const { return server_.port(); }

private:
    void serve(net::WsConnection& conn);

    ChatService& service_;
    std::string token_;
    net::WsServer server_;
};

} // namespace cluedesk::chat
