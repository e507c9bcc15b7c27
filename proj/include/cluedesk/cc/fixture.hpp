#pragma once

// Device fixture files: one `key = value` per line, '#' starts a comment,
// multi-field values separated by '|'.
//
//   os_version       = Windows 11 Pro 23H2
//   process          = <name> | <cpu_percent> | <memory_mb>
//   software         = <name> | <version>
//   network.ssid     = <ssid>
//   network.security = open | password_protected
//   interface        = <name> | <address>
//   download         = <filename> | <size_bytes> | <origin_hint>
//   firewall_enabled = true | false
//   antivirus_active = true | false
//   peripheral       = <name>
//
// An empty file is a neutral machine: empty lists, firewall and antivirus on.

#include "cluedesk/cc/source.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace cluedesk::cc {

// Throws ParseError carrying the 1-based line number.
DeviceSnapshot parse_fixture(std::string_view content, const std::string& source_name);
DeviceSnapshot load_fixture(const std::filesystem::path& path);

class FixtureSource final : public SnapshotSource {
public:
    explicit FixtureSource(DeviceSnapshot fixture) : fixture_(std::move(fixture)) {}
    static FixtureSource from_file(const std::filesystem::path& path);

    void collect(InfoCategory category, DeviceSnapshot& into) override;

private:
    DeviceSnapshot fixture_;
};

} // namespace cluedesk::cc
