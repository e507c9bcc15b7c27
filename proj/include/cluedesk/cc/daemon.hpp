#pragma once

#include "cluedesk/cc/collector.hpp"
#include "cluedesk/net/ws.hpp"

#include <atomic>
#include <memory>

namespace cluedesk::cc {

// Serves a collector over WebSocket. Each connection must open with hello;
// the daemon answers snapshot_ready (or error not_ready), then one answer
// or error per query. Queries on a connection without consent are refused.
class CcDaemon {
public:
    CcDaemon(ClueCollector& collector, std::string host, std::uint16_t port);
    ~CcDaemon();

    void start();
    void stop();
    std::uint16_t port() const;

    std::size_t answers_served() const { return answers_.load(); }

private:
    void serve(net::WsConnection& conn);

    ClueCollector& collector_;
    std::unique_ptr<net::WsServer> server_;
    std::atomic<std::size_t> answers_{0};
};

} // namespace cluedesk::cc
