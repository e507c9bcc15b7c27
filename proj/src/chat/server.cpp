#include "cluedesk/chat/server.hpp"

#include "cluedesk/chat/protocol.hpp"
#include "cluedesk/common/error.hpp"

namespace cluedesk::chat {

ChatServer::ChatServer(ChatService& service, std::string host, std::uint16_t port,
                       std::string token)
    : service_(service),
      token_(std::move(token)),
      server_(
          std::move(host), port,
          [this](net::WsConnection& conn, const net::UpgradeRequest&) { serve(conn); },
          [this](const net::UpgradeRequest& req) {
              return req.header("authorization") == "Bearer " + token_;
          }) {}

void ChatServer::serve(net::WsConnection& conn) {
    std::string session_id;
    auto send = [&](const wire::ServerFrame& f) { conn.write(wire::encode(f)); };
    auto fail = [&](const char* code, const std::string& msg) {
        send(wire::ErrorFrame{code, msg});
    };
    while (auto text = conn.read()) {
        wire::ClientFrame frame;
        try {
            frame = wire::decode_client(*text);
        } catch (const ParseError& e) {
            fail(wire::kBadFrame, e.what());
            continue;
        }
        try {
            if (auto* open = std::get_if<wire::Open>(&frame)) {
                if (!session_id.empty()) {
                    fail(wire::kAlreadyOpen, "connection already has a session");
                    continue;
                }
                session_id = service_.open_session(open->config, open->consent);
                send(wire::Opened{session_id,
                                  service_.state(session_id).cc_effectively_disabled});
                continue;
            }
            if (session_id.empty()) {
                fail(wire::kNotOpen, "send open first");
                continue;
            }
            if (auto* msg = std::get_if<wire::UserMsg>(&frame)) {
                for (auto& p : service_.post_user_message(session_id, msg->text)) {
                    send(wire::Assistant{std::move(p)});
                }
            } else if (auto* act = std::get_if<wire::StepAction>(&frame)) {
                send(wire::Assistant{service_.post_step_action(session_id, act->action, act->text)});
            }
        } catch (const TransportError&) {
            break;  // peer gone mid-write
        } catch (const ContractError& e) {
            fail(session_id.empty() ? wire::kInvalidConfig : wire::kInvalidAction, e.what());
        } catch (const InvalidActionError& e) {
            fail(wire::kInvalidAction, e.what());
        } catch (const NotFoundError& e) {
            fail(wire::kNotFound, e.what());
        } catch (const std::exception& e) {
            fail(wire::kInternal, e.what());
        }
    }
    if (!session_id.empty()) {
        try {
            service_.close_session(session_id);
        } catch (const std::exception&) {
        }
    }
}

} // namespace cluedesk::chat
