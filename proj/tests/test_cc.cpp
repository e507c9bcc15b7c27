#include "cluedesk/cc/client.hpp"
#include "cluedesk/cc/collector.hpp"
#include "cluedesk/cc/daemon.hpp"
#include "cluedesk/cc/evidence.hpp"
#include "cluedesk/cc/fixture.hpp"
#include "cluedesk/cc/live.hpp"
#include "cluedesk/cc/protocol.hpp"
#include "cluedesk/common/error.hpp"

#include <doctest.h>

#include <fstream>
#include <unistd.h>

using namespace cluedesk;
using namespace cluedesk::cc;
namespace fs = std::filesystem;

namespace {

constexpr Millis kEpoch = 1'700'000'000'000;

fs::path fixture(const std::string& name) {
    return fs::path(CLUEDESK_DATA_DIR) / "fixtures" / (name + ".fixture");
}

// Fails every collection of one category after `fail_after` successes.
class FlakySource final : public SnapshotSource {
public:
    FlakySource(InfoCategory bad, int fail_after) : bad_(bad), budget_(fail_after) {}
    bool supports(InfoCategory c) const override { return c != InfoCategory::HardwarePeripherals; }
    void collect(InfoCategory c, DeviceSnapshot& into) override {
        if (c == bad_ && budget_-- <= 0) {
            throw std::runtime_error("device busy");
        }
        if (c == InfoCategory::Processes) {
            into.processes.push_back({"p" + std::to_string(++generation_), 1.0, 1.0});
        }
    }

private:
    InfoCategory bad_;
    int budget_;
    int generation_ = 0;
};

void write_file(const fs::path& p, const std::string& content) {
    fs::create_directories(p.parent_path());
    std::ofstream(p) << content;
}

} // namespace

TEST_CASE("fixture parse: shipped pc_performance fixture") {
    auto s = load_fixture(fixture("pc_performance"));
    CHECK(s.os_version == "Windows 11 Home 23H2");
    REQUIRE(s.processes.size() == 5);
    CHECK(s.processes[2] == ProcessInfo{"prime95.exe", 97.3, 288});
    CHECK(s.network.ssid == "HomeNet");
    CHECK(s.security_settings.firewall_enabled);
    CHECK(s.hardware_peripherals.size() == 2);
}

TEST_CASE("fixture parse: empty file is a neutral machine") {
    auto s = parse_fixture("", "empty");
    CHECK(s.processes.empty());
    CHECK(s.security_settings.firewall_enabled);
    CHECK(s.security_settings.antivirus_active);
}

TEST_CASE("fixture parse errors carry the line number") {
    auto line_of = [](const std::string& text) {
        try {
            parse_fixture(text, "t");
        } catch (const ParseError& e) {
            return e.line();
        }
        return std::size_t{0};
    };
    CHECK(line_of("# c\nprocess = a | x | 3\n") == 2);
    CHECK(line_of("os_version = x\n\nbogus_key = 1\n") == 3);
    CHECK(line_of("no equals sign\n") == 1);
    CHECK(line_of("firewall_enabled = maybe\n") == 1);
    CHECK(line_of("process = a | 1\n") == 1);
    CHECK(line_of("process = a | 150 | 3\n") == 1);
}

TEST_CASE("collector period must be positive") {
    ManualClock clock(kEpoch);
    auto src = std::make_shared<FixtureSource>(FixtureSource::from_file(fixture("empty")));
    CHECK_THROWS_AS(ClueCollector(src, clock, 0.0), ContractError);
    CHECK_THROWS_AS(ClueCollector(src, clock, -1.0), ContractError);
}

TEST_CASE("collector: consent before readiness, then slices from the latest snapshot") {
    ManualClock clock(kEpoch);
    auto src = std::make_shared<FixtureSource>(FixtureSource::from_file(fixture("pc_performance")));
    ClueCollector c(src, clock, 5.0);
    CHECK_THROWS_AS(c.query(InfoCategory::Processes, true), NotReadyError);
    c.refresh_once();
    CHECK_THROWS_AS(c.query(InfoCategory::Processes, false), ConsentRequiredError);
    auto slice = c.query(InfoCategory::Processes, true);
    CHECK(slice.status == SliceStatus::Ok);
    CHECK(slice.taken_at == kEpoch);
    CHECK(render_slice(slice).find("prime95.exe cpu 97.3%") != std::string::npos);
}

TEST_CASE("collector refresh cadence follows the clock") {
    ManualClock clock(kEpoch);
    auto src = std::make_shared<FixtureSource>(FixtureSource::from_file(fixture("empty")));
    ClueCollector c(src, clock, 5.0);
    CHECK(c.refresh_if_due());
    CHECK_FALSE(c.refresh_if_due());
    clock.advance(4999);
    CHECK_FALSE(c.refresh_if_due());
    clock.advance(1);
    CHECK(c.refresh_if_due());
    CHECK(c.snapshot_count() == 2);
    CHECK(c.latest()->taken_at == kEpoch + 5000);
}

TEST_CASE("failed collection marks the category stale and keeps old data") {
    ManualClock clock(kEpoch);
    auto src = std::make_shared<FlakySource>(InfoCategory::Processes, 1);
    ClueCollector c(src, clock, 1.0);
    c.refresh_once();
    CHECK(c.query(InfoCategory::Processes, true).status == SliceStatus::Ok);
    clock.advance(1000);
    c.refresh_once();
    auto slice = c.query(InfoCategory::Processes, true);
    CHECK(slice.status == SliceStatus::Stale);
    CHECK(slice.payload["processes"][0]["name"] == "p1");
    CHECK(render_slice(slice).find("(stale)") != std::string::npos);
    CHECK(c.query(InfoCategory::HardwarePeripherals, true).status == SliceStatus::Unsupported);
    CHECK(c.query(InfoCategory::Network, true).status == SliceStatus::Ok);
}

TEST_CASE("collector thread refreshes on its own") {
    SystemClock clock;
    auto src = std::make_shared<FixtureSource>(FixtureSource::from_file(fixture("empty")));
    ClueCollector c(src, clock, 0.02);
    c.start();
    CHECK(c.wait_for_count(3, std::chrono::milliseconds(5000)));
    c.stop();
}

TEST_CASE("local evidence honours consent and drives refresh") {
    ManualClock clock(kEpoch);
    auto src = std::make_shared<FixtureSource>(FixtureSource::from_file(fixture("empty")));
    ClueCollector c(src, clock, 5.0);
    LocalEvidence no(c, false, true);
    CHECK_THROWS_AS(no.query(InfoCategory::Processes), ConsentRequiredError);
    LocalEvidence yes(c, true, true);
    CHECK(yes.query(InfoCategory::Processes).taken_at == kEpoch);
    clock.advance(6000);
    CHECK(yes.query(InfoCategory::Processes).taken_at == kEpoch + 6000);
}

TEST_CASE("cc frames round trip") {
    std::vector<wire::Frame> frames{
        wire::Hello{"s1", true},
        wire::SnapshotReady{kEpoch},
        wire::Query{InfoCategory::Downloads},
        wire::Answer{CategorySlice{InfoCategory::Network, SliceStatus::Stale, 5, {{"ssid", nullptr}}}},
        wire::ErrorFrame{"not_ready", "no snapshot yet"},
    };
    for (const auto& f : frames) {
        CHECK(wire::decode(wire::encode(f)) == f);
    }
    CHECK_THROWS_AS(wire::decode("{"), ParseError);
    CHECK_THROWS_AS(wire::decode(R"({"type":"query","category":"kitchen"})"), ParseError);
}

TEST_CASE("daemon and client over a real socket") {
    ManualClock clock(kEpoch);
    auto src = std::make_shared<FixtureSource>(FixtureSource::from_file(fixture("airport_wifi")));
    ClueCollector collector(src, clock, 5.0);

    CcDaemon daemon(collector, "127.0.0.1", 0);
    daemon.start();

    SUBCASE("not ready before the first snapshot") {
        auto client = CcClient::connect("127.0.0.1", daemon.port(), "s1", true);
        CHECK_FALSE(client->ready_at());
        CHECK_THROWS_AS(client->query(InfoCategory::Network), NotReadyError);
    }
    SUBCASE("answers with consent, refuses without") {
        collector.refresh_once();
        auto client = CcClient::connect("127.0.0.1", daemon.port(), "s1", true);
        CHECK(client->ready_at() == kEpoch);
        auto slice = client->query(InfoCategory::Network);
        CHECK(slice == collector.query(InfoCategory::Network, true));
        auto denied = CcClient::connect("127.0.0.1", daemon.port(), "s2", false);
        CHECK_THROWS_AS(denied->query(InfoCategory::Network), ConsentRequiredError);
        CHECK(daemon.answers_served() == 1);
    }
    daemon.stop();
    CHECK_THROWS_AS(CcClient::connect("127.0.0.1", daemon.port(), "s3", true), TransportError);
}

TEST_CASE("live source against a synthetic procfs tree") {
    const fs::path root = fs::temp_directory_path() / ("cluedesk-live-" + std::to_string(::getpid()));
    fs::remove_all(root);
    const long ticks = sysconf(_SC_CLK_TCK);
    const long page = sysconf(_SC_PAGESIZE);
    // utime+stime = 10 s of CPU over a 50 s lifetime: 20%.
    std::string fields = "S";
    for (int i = 1; i <= 21; ++i) {  // f[i] counts from the state field
        long v = 0;
        if (i == 11 || i == 12) {  // utime, stime
            v = 5 * ticks;
        }
        if (i == 19) {  // starttime
            v = 50 * ticks;
        }
        fields += " " + std::to_string(v);
    }
    write_file(root / "proc/self/stat", "");
    write_file(root / "proc/uptime", "100.00 50.00\n");
    write_file(root / "proc/42/stat", "42 (busy worker) " + fields + "\n");
    write_file(root / "proc/42/statm", "1000 256 0 0 0 0 0\n");
    write_file(root / "proc/42/comm", "busy worker\n");
    write_file(root / "proc/77/comm", "clamd\n");
    write_file(root / "os-release", "NAME=X\nPRETTY_NAME=\"Test Linux 1\"\n");
    write_file(root / "dpkg", "Package: foo\nStatus: install ok installed\nVersion: 1.2\n\n"
                              "Package: bar\nStatus: deinstall ok config-files\nVersion: 9\n");
    write_file(root / "ufw.conf", "# c\nENABLED=no\n");
    write_file(root / "dl/setup.exe", "abcd");
    write_file(root / "usb/1-1/product", "Trackball\n");

    LiveLinuxSource::Paths p;
    p.proc = root / "proc";
    p.os_release = root / "os-release";
    p.dpkg_status = root / "dpkg";
    p.ufw_conf = root / "ufw.conf";
    p.usb_devices = root / "usb";
    p.downloads = root / "dl";
    LiveLinuxSource src(p);
    DeviceSnapshot s;
    for (InfoCategory c : kAllCategories) {
        REQUIRE(src.supports(c));
        src.collect(c, s);
    }
    REQUIRE(s.processes.size() == 1);
    CHECK(s.processes[0].name == "busy worker");
    CHECK(s.processes[0].cpu_percent == doctest::Approx(20.0));
    CHECK(s.processes[0].memory_mb == doctest::Approx(256.0 * page / (1024.0 * 1024.0)));
    CHECK(s.os_version.rfind("Test Linux 1 (kernel ", 0) == 0);
    CHECK(s.installed_software == std::vector<SoftwareInfo>{{"foo", "1.2"}});
    CHECK_FALSE(s.security_settings.firewall_enabled);
    CHECK(s.security_settings.antivirus_active);
    REQUIRE(s.downloads.size() == 1);
    CHECK(s.downloads[0].size_bytes == 4);
    CHECK(s.hardware_peripherals == std::vector<std::string>{"Trackball"});

    p.ufw_conf = root / "missing";
    CHECK_FALSE(LiveLinuxSource(p).supports(InfoCategory::SecuritySettings));
    fs::remove_all(root);
}

TEST_CASE("live source sees this test process in the real procfs") {
    LiveLinuxSource src;
    if (!src.supports(InfoCategory::Processes)) {
        MESSAGE("no procfs here");
        return;
    }
    std::ifstream comm("/proc/self/comm");
    std::string me;
    std::getline(comm, me);
    DeviceSnapshot s;
    src.collect(InfoCategory::Processes, s);
    bool found = false;
    for (const auto& p : s.processes) {
        found = found || p.name == me;
        CHECK(p.cpu_percent >= 0.0);
        CHECK(p.cpu_percent <= 100.0);
    }
    CHECK(found);
}
