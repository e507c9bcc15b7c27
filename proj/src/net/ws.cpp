#include "cluedesk/net/ws.hpp"

#include "cluedesk/common/error.hpp"
#include "cluedesk/common/text.hpp"

#include <boost/asio/ip/tcp.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>

#include <sys/socket.h>

#include <atomic>
#include <list>
#include <mutex>
#include <thread>

namespace cluedesk::net {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;

std::string UpgradeRequest::header(std::string_view name) const {
    auto it = headers.find(text::to_lower(name));
    return it == headers.end() ? std::string() : it->second;
}

std::pair<std::string, std::uint16_t> parse_host_port(std::string_view addr) {
    const auto colon = addr.rfind(':');
    if (colon == std::string_view::npos || colon + 1 == addr.size()) {
        throw ConfigError("expected host:port, got '" + std::string(addr) + "'");
    }
    unsigned long port = 0;
    try {
        std::size_t used = 0;
        port = std::stoul(std::string(addr.substr(colon + 1)), &used);
        if (used != addr.size() - colon - 1 || port > 65535) {
            throw std::out_of_range("port");
        }
    } catch (const std::exception&) {
        throw ConfigError("bad port in '" + std::string(addr) + "'");
    }
    std::string host(addr.substr(0, colon));
    if (host.empty()) {
        host = "0.0.0.0";
    }
    return {host, static_cast<std::uint16_t>(port)};
}

namespace {

class BeastConnection final : public WsConnection {
public:
    explicit BeastConnection(tcp::socket socket) : ws_(std::move(socket)) {
        ws_.text(true);
    }

    websocket::stream<tcp::socket>& stream() { return ws_; }

    std::optional<std::string> read() override {
        beast::flat_buffer buffer;
        beast::error_code ec;
        ws_.read(buffer, ec);
        if (ec) {
            return std::nullopt;
        }
        return beast::buffers_to_string(buffer.data());
    }

    void write(std::string_view text) override {
        beast::error_code ec;
        ws_.write(asio::buffer(text.data(), text.size()), ec);
        if (ec) {
            throw TransportError("websocket write failed: " + ec.message());
        }
    }

    void close() override {
        beast::error_code ec;
        if (ws_.is_open()) {
            ws_.close(websocket::close_code::normal, ec);
        }
    }

    // Safe from another thread: wakes a blocked read().
    void shutdown_socket() {
        ::shutdown(ws_.next_layer().native_handle(), SHUT_RDWR);
    }

private:
    websocket::stream<tcp::socket> ws_;
};

} // namespace

struct WsServer::Impl {
    struct Live {
        std::shared_ptr<BeastConnection> conn;
        std::thread thread;
        std::shared_ptr<std::atomic<bool>> done;
    };

    std::string host;
    std::uint16_t requested_port;
    Handler handler;
    Authorizer authorize;

    asio::io_context io;
    tcp::acceptor acceptor{io};
    std::thread accept_thread;
    std::mutex mutex;
    std::list<Live> live;
    std::atomic<bool> stopping{false};
    std::uint16_t bound_port = 0;

    void reap() {
        for (auto it = live.begin(); it != live.end();) {
            if (it->done->load()) {
                it->thread.join();
                it = live.erase(it);
            } else {
                ++it;
            }
        }
    }

    void serve(const std::shared_ptr<BeastConnection>& conn) {
        auto& ws = conn->stream();
        beast::flat_buffer buffer;
        http::request<http::string_body> req;
        beast::error_code ec;
        http::read(ws.next_layer(), buffer, req, ec);
        if (ec || !websocket::is_upgrade(req)) {
            return;
        }
        UpgradeRequest up;
        up.target = std::string(req.target());
        for (const auto& field : req) {
            up.headers[text::to_lower(std::string(field.name_string()))] =
                std::string(field.value());
        }
        if (authorize && !authorize(up)) {
            http::response<http::string_body> res{http::status::unauthorized, req.version()};
            res.set(http::field::content_type, "text/plain");
            res.body() = "unauthorized";
            res.prepare_payload();
            http::write(ws.next_layer(), res, ec);
            return;
        }
        ws.accept(req, ec);
        if (ec) {
            return;
        }
        try {
            handler(*conn, up);
        } catch (const std::exception&) {
            // The handler owns error reporting on the wire; a throw just ends
            // this connection.
        }
        conn->close();
    }

    void do_accept() {
        acceptor.async_accept([this](beast::error_code ec, tcp::socket socket) {
            if (ec || stopping) {
                return;
            }
            auto conn = std::make_shared<BeastConnection>(std::move(socket));
            auto done = std::make_shared<std::atomic<bool>>(false);
            {
                std::lock_guard lock(mutex);
                reap();
                live.push_back({conn, std::thread([this, conn, done] {
                                    serve(conn);
                                    done->store(true);
                                }),
                                done});
            }
            do_accept();
        });
    }
};

WsServer::WsServer(std::string host, std::uint16_t port, Handler handler, Authorizer authorize)
    : impl_(std::make_unique<Impl>()) {
    impl_->host = std::move(host);
    impl_->requested_port = port;
    impl_->handler = std::move(handler);
    impl_->authorize = std::move(authorize);
}

WsServer::~WsServer() { stop(); }

void WsServer::start() {
    try {
        const tcp::endpoint ep(asio::ip::make_address(impl_->host), impl_->requested_port);
        impl_->acceptor.open(ep.protocol());
        impl_->acceptor.set_option(asio::socket_base::reuse_address(true));
        impl_->acceptor.bind(ep);
        impl_->acceptor.listen();
        impl_->bound_port = impl_->acceptor.local_endpoint().port();
    } catch (const boost::system::system_error& e) {
        throw TransportError("cannot listen on " + impl_->host + ":" +
                             std::to_string(impl_->requested_port) + ": " + e.what());
    }
    impl_->do_accept();
    impl_->accept_thread = std::thread([this] { impl_->io.run(); });
}

void WsServer::stop() {
    if (!impl_ || impl_->stopping.exchange(true)) {
        return;
    }
    asio::post(impl_->io, [this] {
        beast::error_code ec;
        impl_->acceptor.close(ec);
    });
    if (impl_->accept_thread.joinable()) {
        impl_->accept_thread.join();
    }
    impl_->io.stop();
    std::list<Impl::Live> live;
    {
        std::lock_guard lock(impl_->mutex);
        live.swap(impl_->live);
    }
    for (auto& l : live) {
        l.conn->shutdown_socket();
    }
    for (auto& l : live) {
        l.thread.join();
    }
}

std::uint16_t WsServer::port() const { return impl_->bound_port; }

namespace {

class ClientConnection final : public WsConnection {
public:
    ClientConnection() : ws_(io_) { ws_.text(true); }

    websocket::stream<tcp::socket>& stream() { return ws_; }
    asio::io_context& io() { return io_; }

    std::optional<std::string> read() override {
        beast::flat_buffer buffer;
        beast::error_code ec;
        ws_.read(buffer, ec);
        if (ec) {
            return std::nullopt;
        }
        return beast::buffers_to_string(buffer.data());
    }

    void write(std::string_view text) override {
        beast::error_code ec;
        ws_.write(asio::buffer(text.data(), text.size()), ec);
        if (ec) {
            throw TransportError("websocket write failed: " + ec.message());
        }
    }

    void close() override {
        beast::error_code ec;
        if (ws_.is_open()) {
            ws_.close(websocket::close_code::normal, ec);
        }
    }

    ~ClientConnection() override { close(); }

private:
    asio::io_context io_;
    websocket::stream<tcp::socket> ws_;
};

} // namespace

std::unique_ptr<WsConnection> ws_connect(const std::string& host, std::uint16_t port,
                                         const std::string& target,
                                         const std::map<std::string, std::string>& headers) {
    auto conn = std::make_unique<ClientConnection>();
    auto& ws = conn->stream();
    beast::error_code ec;
    tcp::resolver resolver(conn->io());
    auto endpoints = resolver.resolve(host, std::to_string(port), ec);
    if (ec) {
        throw TransportError("cannot resolve " + host + ": " + ec.message());
    }
    asio::connect(ws.next_layer(), endpoints, ec);
    if (ec) {
        throw TransportError("cannot connect to " + host + ":" + std::to_string(port) + ": " +
                             ec.message());
    }
    ws.set_option(websocket::stream_base::decorator([headers](websocket::request_type& req) {
        for (const auto& [name, value] : headers) {
            req.set(name, value);
        }
    }));
    websocket::response_type res;
    ws.handshake(res, host + ":" + std::to_string(port), target, ec);
    if (ec == websocket::error::upgrade_declined) {
        // Beast 1.74 drops the response on a declined upgrade, so the status is not known here.
        throw TransportError("websocket upgrade declined by " + host + ":" + std::to_string(port));
    }
    if (ec) {
        throw TransportError("websocket handshake failed: " + ec.message());
    }
    return conn;
}

} // namespace cluedesk::net
