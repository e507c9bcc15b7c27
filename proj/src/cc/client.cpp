#include "cluedesk/cc/client.hpp"

#include "cluedesk/cc/protocol.hpp"
#include "cluedesk/common/error.hpp"

namespace cluedesk::cc {

std::unique_ptr<CcClient> CcClient::connect(const std::string& host, std::uint16_t port,
                                            const std::string& session_id, bool consent) {
    std::unique_ptr<CcClient> client(new CcClient(net::ws_connect(host, port)));
    client->conn_->write(wire::encode(wire::Hello{session_id, consent}));
    ++client->frames_sent_;
    auto reply = client->conn_->read();
    if (!reply) {
        throw TransportError("CC daemon closed the connection during hello");
    }
    auto frame = wire::decode(*reply);
    if (auto* ready = std::get_if<wire::SnapshotReady>(&frame)) {
        client->ready_at_ = ready->taken_at;
    }
    return client;
}

CategorySlice CcClient::query(InfoCategory category) {
    std::lock_guard lock(mutex_);
    conn_->write(wire::encode(wire::Query{category}));
    ++frames_sent_;
    auto reply = conn_->read();
    if (!reply) {
        throw TransportError("CC daemon connection lost");
    }
    auto frame = wire::decode(*reply);
    if (auto* a = std::get_if<wire::Answer>(&frame)) {
        return a->slice;
    }
    if (auto* e = std::get_if<wire::ErrorFrame>(&frame)) {
        if (e->code == "consent_required") {
            throw ConsentRequiredError(e->message);
        }
        if (e->code == "not_ready") {
            throw NotReadyError(e->message);
        }
        throw ProviderError("CC daemon error " + e->code + ": " + e->message);
    }
    throw ParseError("cc-frame", 1, "unexpected reply to query");
}

} // namespace cluedesk::cc
