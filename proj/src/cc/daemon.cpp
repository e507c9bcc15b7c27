#include "cluedesk/cc/daemon.hpp"

#include "cluedesk/cc/protocol.hpp"
#include "cluedesk/common/error.hpp"

namespace cluedesk::cc {

CcDaemon::CcDaemon(ClueCollector& collector, std::string host, std::uint16_t port)
    : collector_(collector) {
    server_ = std::make_unique<net::WsServer>(
        std::move(host), port,
        [this](net::WsConnection& conn, const net::UpgradeRequest&) { serve(conn); });
}

CcDaemon::~CcDaemon() { stop(); }

void CcDaemon::start() { server_->start(); }
void CcDaemon::stop() { server_->stop(); }
std::uint16_t CcDaemon::port() const { return server_->port(); }

void CcDaemon::serve(net::WsConnection& conn) {
    std::optional<wire::Hello> hello;
    while (auto text = conn.read()) {
        wire::Frame frame;
        try {
            frame = wire::decode(*text);
        } catch (const ParseError& e) {
            conn.write(wire::encode(wire::ErrorFrame{"bad_frame", e.what()}));
            continue;
        }
        if (auto* h = std::get_if<wire::Hello>(&frame)) {
            hello = *h;
            if (auto snap = collector_.latest()) {
                conn.write(wire::encode(wire::SnapshotReady{snap->taken_at}));
            } else {
                conn.write(wire::encode(wire::ErrorFrame{"not_ready", "no snapshot yet"}));
            }
            continue;
        }
        if (!hello) {
            conn.write(wire::encode(wire::ErrorFrame{"hello_required", "send hello first"}));
            continue;
        }
        if (auto* q = std::get_if<wire::Query>(&frame)) {
            try {
                auto slice = collector_.query(q->category, hello->consent);
                conn.write(wire::encode(wire::Answer{std::move(slice)}));
                ++answers_;
            } catch (const ConsentRequiredError& e) {
                conn.write(wire::encode(wire::ErrorFrame{"consent_required", e.what()}));
            } catch (const NotReadyError& e) {
                conn.write(wire::encode(wire::ErrorFrame{"not_ready", e.what()}));
            }
            continue;
        }
        conn.write(wire::encode(wire::ErrorFrame{"bad_frame", "unexpected frame type"}));
    }
}

} // namespace cluedesk::cc
