#pragma once

// Minimal WebSocket transport: text frames only, one thread per connection.
// Keeps Boost.Beast out of every other translation unit.

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace cluedesk::net {

struct UpgradeRequest {
    std::string target;
    std::map<std::string, std::string> headers;  // names lowercased

    std::string header(std::string_view name) const;
};

// Not thread-safe: read and write from the owning thread only.
class WsConnection {
public:
    virtual ~WsConnection() = default;
    // Next text frame; nullopt once the peer closed or the socket failed.
    virtual std::optional<std::string> read() = 0;
    // Throws TransportError when the peer is gone.
    virtual void write(std::string_view text) = 0;
    virtual void close() = 0;
};

class WsServer {
public:
    using Authorizer = std::function<bool(const UpgradeRequest&)>;
    // Runs on the connection's own thread; returning closes the connection.
    using Handler = std::function<void(WsConnection&, const UpgradeRequest&)>;

    // Port 0 picks a free port; see port() after start().
    WsServer(std::string host, std::uint16_t port, Handler handler, Authorizer authorize = {});
    ~WsServer();

    WsServer(const WsServer&) = delete;
    WsServer& operator=(const WsServer&) = delete;

    void start();
    // Stops accepting, shuts down live sockets and joins every thread.
    void stop();
    std::uint16_t port() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Throws TransportError when unreachable or when the upgrade is refused.
std::unique_ptr<WsConnection> ws_connect(const std::string& host, std::uint16_t port,
                                         const std::string& target = "/",
                                         const std::map<std::string, std::string>& headers = {});

// "host:port" -> pair; throws ConfigError.
std::pair<std::string, std::uint16_t> parse_host_port(std::string_view addr);

} // namespace cluedesk::net
