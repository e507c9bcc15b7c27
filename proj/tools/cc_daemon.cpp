// Clue-collector daemon: keeps a refreshed device snapshot and answers
// category queries over WebSocket until SIGINT/SIGTERM.

#include "cluedesk/cc/collector.hpp"
#include "cluedesk/cc/daemon.hpp"
#include "cluedesk/cc/fixture.hpp"
#include "cluedesk/cc/live.hpp"
#include "cluedesk/common/error.hpp"
#include "cluedesk/net/ws.hpp"

#include <CLI11.hpp>

#include <csignal>
#include <iostream>
#include <thread>

namespace {

volatile std::sig_atomic_t g_stop = 0;

void on_signal(int) { g_stop = 1; }

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Device clue collector"};
    double period = 5.0;
    std::string fixture;
    std::string listen = "127.0.0.1:7040";
    app.add_option("--period", period, "Refresh period in seconds")->check(CLI::PositiveNumber);
    app.add_option("--fixture", fixture, "Serve a device fixture file instead of this machine");
    app.add_option("--listen", listen, "host:port to listen on");
    CLI11_PARSE(app, argc, argv);

    try {
        using namespace cluedesk;
        std::shared_ptr<cc::SnapshotSource> source;
        if (fixture.empty()) {
            source = std::make_shared<cc::LiveLinuxSource>();
        } else {
            source = std::make_shared<cc::FixtureSource>(cc::FixtureSource::from_file(fixture));
        }
        SystemClock clock;
        cc::ClueCollector collector(source, clock, period);
        collector.start();
        const auto [host, port] = net::parse_host_port(listen);
        cc::CcDaemon daemon(collector, host, port);
        daemon.start();
        std::cout << "cc_daemon listening on " << host << ":" << daemon.port() << std::endl;

        std::signal(SIGINT, on_signal);
        std::signal(SIGTERM, on_signal);
        while (!g_stop) {
            std::this_thread::sleep_for(std::chrono::milliseconds(200));
        }
        daemon.stop();
        collector.stop();
    } catch (const std::exception& e) {
        std::cerr << "cc_daemon: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
