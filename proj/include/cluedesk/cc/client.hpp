#pragma once

#include "cluedesk/cc/snapshot.hpp"
#include "cluedesk/net/ws.hpp"

#include <memory>
#include <mutex>
#include <optional>

namespace cluedesk::cc {

class CcClient {
public:
    // Connects and sends hello. Throws TransportError when the daemon is
    // unreachable.
    static std::unique_ptr<CcClient> connect(const std::string& host, std::uint16_t port,
                                             const std::string& session_id, bool consent);

    // taken_at from snapshot_ready; absent when the daemon was not ready.
    std::optional<Millis> ready_at() const { return ready_at_; }

    // Throws ConsentRequiredError, NotReadyError or TransportError.
    CategorySlice query(InfoCategory category);

    std::size_t frames_sent() const { return frames_sent_; }

private:
    explicit CcClient(std::unique_ptr<net::WsConnection> conn) : conn_(std::move(conn)) {}

    std::unique_ptr<net::WsConnection> conn_;
    std::optional<Millis> ready_at_;
    std::mutex mutex_;
    std::size_t frames_sent_ = 0;
};

} // namespace cluedesk::cc
