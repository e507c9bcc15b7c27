#include "cluedesk/cc/snapshot.hpp"

#include <cstdio>

namespace cluedesk::cc {

using nlohmann::json;

std::string_view to_string(WifiSecurity s) {
    return s == WifiSecurity::Open ? "open" : "password_protected";
}

json category_payload(const DeviceSnapshot& s, InfoCategory c) {
    switch (c) {
    case InfoCategory::Processes: {
        json list = json::array();
        for (const auto& p : s.processes) {
            list.push_back({{"name", p.name}, {"cpu_percent", p.cpu_percent},
                            {"memory_mb", p.memory_mb}});
        }
        return {{"os_version", s.os_version}, {"processes", list}};
    }
    case InfoCategory::InstalledSoftware: {
        json list = json::array();
        for (const auto& sw : s.installed_software) {
            list.push_back({{"name", sw.name}, {"version", sw.version}});
        }
        return {{"installed_software", list}};
    }
    case InfoCategory::Network: {
        json ifaces = json::array();
        for (const auto& i : s.network.interfaces) {
            ifaces.push_back({{"name", i.name}, {"address", i.address}});
        }
        return {{"ssid", s.network.ssid ? json(*s.network.ssid) : json(nullptr)},
                {"security", std::string(to_string(s.network.security))},
                {"interfaces", ifaces}};
    }
    case InfoCategory::Downloads: {
        json list = json::array();
        for (const auto& d : s.downloads) {
            list.push_back({{"filename", d.filename}, {"size_bytes", d.size_bytes},
                            {"origin_hint", d.origin_hint}});
        }
        return {{"downloads", list}};
    }
    case InfoCategory::SecuritySettings:
        return {{"firewall_enabled", s.security_settings.firewall_enabled},
                {"antivirus_active", s.security_settings.antivirus_active}};
    case InfoCategory::HardwarePeripherals:
        return {{"hardware_peripherals", s.hardware_peripherals}};
    }
    return json::object();
}

CategorySlice slice_of(const DeviceSnapshot& s, InfoCategory c) {
    return {c, s.status_of(c), s.taken_at, category_payload(s, c)};
}

void copy_category(const DeviceSnapshot& from, DeviceSnapshot& into, InfoCategory c) {
    switch (c) {
    case InfoCategory::Processes:
        into.os_version = from.os_version;
        into.processes = from.processes;
        break;
    case InfoCategory::InstalledSoftware:
        into.installed_software = from.installed_software;
        break;
    case InfoCategory::Network:
        into.network = from.network;
        break;
    case InfoCategory::Downloads:
        into.downloads = from.downloads;
        break;
    case InfoCategory::SecuritySettings:
        into.security_settings = from.security_settings;
        break;
    case InfoCategory::HardwarePeripherals:
        into.hardware_peripherals = from.hardware_peripherals;
        break;
    }
}

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", v);
    return buf;
}

} // namespace

std::string render_slice(const CategorySlice& slice) {
    std::string out = "[" + std::string(to_string(slice.category)) + "]";
    if (slice.status == SliceStatus::Unsupported) {
        return out + " unsupported on this device\n";
    }
    if (slice.status == SliceStatus::Stale) {
        out += " (stale)";
    }
    out += '\n';
    const json& p = slice.payload;
    switch (slice.category) {
    case InfoCategory::Processes:
        out += "os: " + p.value("os_version", std::string()) + "\n";
        for (const auto& proc : p.at("processes")) {
            out += "- " + proc.at("name").get<std::string>() + " cpu " +
                   fmt(proc.at("cpu_percent").get<double>()) + "% mem " +
                   fmt(proc.at("memory_mb").get<double>()) + " MB\n";
        }
        break;
    case InfoCategory::InstalledSoftware:
        for (const auto& sw : p.at("installed_software")) {
            out += "- " + sw.at("name").get<std::string>() + " " +
                   sw.at("version").get<std::string>() + "\n";
        }
        break;
    case InfoCategory::Network:
        out += "ssid: " + (p.at("ssid").is_null() ? std::string("none")
                                                  : p.at("ssid").get<std::string>()) +
               "\nsecurity: " + p.at("security").get<std::string>() + "\n";
        for (const auto& i : p.at("interfaces")) {
            out += "- " + i.at("name").get<std::string>() + " " +
                   i.at("address").get<std::string>() + "\n";
        }
        break;
    case InfoCategory::Downloads:
        for (const auto& d : p.at("downloads")) {
            out += "- " + d.at("filename").get<std::string>() + " " +
                   std::to_string(d.at("size_bytes").get<std::uint64_t>()) + " bytes from " +
                   d.at("origin_hint").get<std::string>() + "\n";
        }
        break;
    case InfoCategory::SecuritySettings:
        out += std::string("firewall: ") +
               (p.at("firewall_enabled").get<bool>() ? "enabled" : "disabled") +
               "\nantivirus: " + (p.at("antivirus_active").get<bool>() ? "active" : "inactive") +
               "\n";
        break;
    case InfoCategory::HardwarePeripherals:
        for (const auto& h : p.at("hardware_peripherals")) {
            out += "- " + h.get<std::string>() + "\n";
        }
        break;
    }
    return out;
}

} // namespace cluedesk::cc
