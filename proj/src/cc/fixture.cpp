#include "cluedesk/cc/fixture.hpp"

#include "cluedesk/common/error.hpp"
#include "cluedesk/common/files.hpp"
#include "cluedesk/common/text.hpp"

#include <charconv>

namespace cluedesk::cc {

namespace {

struct LineParser {
    const std::string& source;
    std::size_t line;

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(source, line, what); }

    std::vector<std::string> fields(const std::string& value, std::size_t n) const {
        auto parts = text::split(value, '|');
        for (auto& p : parts) {
            p = text::trim(p);
        }
        if (parts.size() != n) {
            fail("expected " + std::to_string(n) + " '|'-separated fields, got " +
                 std::to_string(parts.size()));
        }
        for (const auto& p : parts) {
            if (p.empty()) {
                fail("empty field");
            }
        }
        return parts;
    }

    double number(const std::string& s) const {
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size()) {
            fail("not a number: '" + s + "'");
        }
        return v;
    }

    std::uint64_t natural(const std::string& s) const {
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size()) {
            fail("not a non-negative integer: '" + s + "'");
        }
        return v;
    }

    bool boolean(const std::string& s) const {
        if (s == "true") {
            return true;
        }
        if (s == "false") {
            return false;
        }
        fail("expected true or false, got '" + s + "'");
    }
};

} // namespace

DeviceSnapshot parse_fixture(std::string_view content, const std::string& source_name) {
    DeviceSnapshot snap;
    std::size_t line_no = 0;
    for (const auto& raw : text::split(content, '\n')) {
        ++line_no;
        LineParser lp{source_name, line_no};
        std::string line = raw;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        line = text::trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            lp.fail("expected 'key = value'");
        }
        const std::string key = text::trim(line.substr(0, eq));
        const std::string value = text::trim(line.substr(eq + 1));
        if (value.empty()) {
            lp.fail("empty value for '" + key + "'");
        }
        if (key == "os_version") {
            snap.os_version = value;
        } else if (key == "process") {
            auto f = lp.fields(value, 3);
            const double cpu = lp.number(f[1]);
            if (cpu < 0.0 || cpu > 100.0) {
                lp.fail("cpu_percent outside [0,100]");
            }
            const double mem = lp.number(f[2]);
            if (mem < 0.0) {
                lp.fail("negative memory_mb");
            }
            snap.processes.push_back({f[0], cpu, mem});
        } else if (key == "software") {
            auto f = lp.fields(value, 2);
            snap.installed_software.push_back({f[0], f[1]});
        } else if (key == "network.ssid") {
            snap.network.ssid = value;
        } else if (key == "network.security") {
            if (value == "open") {
                snap.network.security = WifiSecurity::Open;
            } else if (value == "password_protected") {
                snap.network.security = WifiSecurity::PasswordProtected;
            } else {
                lp.fail("network.security must be open or password_protected");
            }
        } else if (key == "interface") {
            auto f = lp.fields(value, 2);
            snap.network.interfaces.push_back({f[0], f[1]});
        } else if (key == "download") {
            auto f = lp.fields(value, 3);
            snap.downloads.push_back({f[0], lp.natural(f[1]), f[2]});
        } else if (key == "firewall_enabled") {
            snap.security_settings.firewall_enabled = lp.boolean(value);
        } else if (key == "antivirus_active") {
            snap.security_settings.antivirus_active = lp.boolean(value);
        } else if (key == "peripheral") {
            snap.hardware_peripherals.push_back(value);
        } else {
            lp.fail("unknown key '" + key + "'");
        }
    }
    return snap;
}

DeviceSnapshot load_fixture(const std::filesystem::path& path) {
    return parse_fixture(read_text_file(path), path.string());
}

FixtureSource FixtureSource::from_file(const std::filesystem::path& path) {
    return FixtureSource(load_fixture(path));
}

void FixtureSource::collect(InfoCategory category, DeviceSnapshot& into) {
    copy_category(fixture_, into, category);
}

} // namespace cluedesk::cc
