#pragma once

#include "cluedesk/model/types.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace cluedesk::cc {

struct ProcessInfo {
    std::string name;
    double cpu_percent = 0.0;  // [0,100]
    double memory_mb = 0.0;
    bool operator==(const ProcessInfo&) const = default;
};

struct SoftwareInfo {
    std::string name;
    std::string version;
    bool operator==(const SoftwareInfo&) const = default;
};

enum class WifiSecurity { Open, PasswordProtected };

struct NetworkInterface {
    std::string name;
    std::string address;
    bool operator==(const NetworkInterface&) const = default;
};

struct NetworkInfo {
    std::optional<std::string> ssid;
    WifiSecurity security = WifiSecurity::PasswordProtected;
    std::vector<NetworkInterface> interfaces;
    bool operator==(const NetworkInfo&) const = default;
};

struct DownloadInfo {
    std::string filename;
    std::uint64_t size_bytes = 0;
    std::string origin_hint;
    bool operator==(const DownloadInfo&) const = default;
};

struct SecuritySettings {
    bool firewall_enabled = true;
    bool antivirus_active = true;
    bool operator==(const SecuritySettings&) const = default;
};

struct DeviceSnapshot {
    Millis taken_at = 0;
    std::string os_version;
    std::vector<ProcessInfo> processes;
    std::vector<SoftwareInfo> installed_software;
    NetworkInfo network;
    std::vector<DownloadInfo> downloads;
    SecuritySettings security_settings;
    std::vector<std::string> hardware_peripherals;
    std::array<SliceStatus, 6> status{};  // indexed by InfoCategory

    SliceStatus status_of(InfoCategory c) const { return status[static_cast<std::size_t>(c)]; }
    void set_status(InfoCategory c, SliceStatus s) { status[static_cast<std::size_t>(c)] = s; }
    bool operator==(const DeviceSnapshot&) const = default;
};

// One category cut out of a snapshot; the only shape ever served to clients.
struct CategorySlice {
    InfoCategory category = InfoCategory::Processes;
    SliceStatus status = SliceStatus::Ok;
    Millis taken_at = 0;
    nlohmann::json payload;
    bool operator==(const CategorySlice&) const = default;
};

std::string_view to_string(WifiSecurity s);

// os_version rides along with the processes slice.
nlohmann::json category_payload(const DeviceSnapshot& s, InfoCategory c);
CategorySlice slice_of(const DeviceSnapshot& s, InfoCategory c);

// Copies one category's fields from `from` into `into`.
void copy_category(const DeviceSnapshot& from, DeviceSnapshot& into, InfoCategory c);

// Plain-text rendering used as model-prompt evidence.
std::string render_slice(const CategorySlice& slice);

} // namespace cluedesk::cc
