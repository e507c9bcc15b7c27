#include "cluedesk/cc/live.hpp"

#include "cluedesk/common/error.hpp"
#include "cluedesk/common/files.hpp"
#include "cluedesk/common/text.hpp"

#include <arpa/inet.h>
#include <ifaddrs.h>
#include <netinet/in.h>
#include <sys/utsname.h>
#include <sys/xattr.h>
#include <unistd.h>

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace cluedesk::cc {

namespace fs = std::filesystem;

namespace {

bool all_digits(const std::string& s) {
    return !s.empty() &&
           std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

std::string read_first_line(const fs::path& p) {
    std::ifstream in(p);
    std::string line;
    std::getline(in, line);
    return text::trim(line);
}

std::string os_pretty_name(const fs::path& os_release) {
    std::ifstream in(os_release);
    std::string line;
    while (std::getline(in, line)) {
        if (text::starts_with(line, "PRETTY_NAME=")) {
            std::string v = line.substr(12);
            if (v.size() >= 2 && v.front() == '"' && v.back() == '"') {
                v = v.substr(1, v.size() - 2);
            }
            return v;
        }
    }
    return "Linux";
}

double uptime_seconds(const fs::path& proc) {
    std::ifstream in(proc / "uptime");
    double up = 0.0;
    in >> up;
    return up;
}

} // namespace

LiveLinuxSource::LiveLinuxSource() : LiveLinuxSource(Paths{}) {}

LiveLinuxSource::LiveLinuxSource(Paths paths) : paths_(std::move(paths)) {
    if (paths_.downloads.empty()) {
        const char* home = std::getenv("HOME");
        paths_.downloads = fs::path(home ? home : "/root") / "Downloads";
    }
}

bool LiveLinuxSource::supports(InfoCategory c) const {
    std::error_code ec;
    switch (c) {
    case InfoCategory::Processes:
        return fs::exists(paths_.proc / "self", ec);
    case InfoCategory::InstalledSoftware:
        return fs::exists(paths_.dpkg_status, ec);
    case InfoCategory::Network:
        return true;
    case InfoCategory::Downloads:
        return fs::is_directory(paths_.downloads, ec);
    case InfoCategory::SecuritySettings:
        return fs::exists(paths_.ufw_conf, ec);
    case InfoCategory::HardwarePeripherals:
        return fs::is_directory(paths_.usb_devices, ec);
    }
    return false;
}

void LiveLinuxSource::collect(InfoCategory c, DeviceSnapshot& into) {
    switch (c) {
    case InfoCategory::Processes:
        collect_processes(into);
        break;
    case InfoCategory::InstalledSoftware:
        collect_software(into);
        break;
    case InfoCategory::Network:
        collect_network(into);
        break;
    case InfoCategory::Downloads:
        collect_downloads(into);
        break;
    case InfoCategory::SecuritySettings:
        collect_security(into);
        break;
    case InfoCategory::HardwarePeripherals:
        collect_hardware(into);
        break;
    }
}

void LiveLinuxSource::collect_processes(DeviceSnapshot& into) {
    utsname u{};
    std::string kernel = uname(&u) == 0 ? u.release : "unknown";
    into.os_version = os_pretty_name(paths_.os_release) + " (kernel " + kernel + ")";

    const double ticks = static_cast<double>(sysconf(_SC_CLK_TCK));
    const double page_mb = static_cast<double>(sysconf(_SC_PAGESIZE)) / (1024.0 * 1024.0);
    const double uptime = uptime_seconds(paths_.proc);

    into.processes.clear();
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(paths_.proc, ec)) {
        const std::string pid = entry.path().filename().string();
        if (!all_digits(pid)) {
            continue;
        }
        std::ifstream stat_in(entry.path() / "stat");
        std::string stat;
        if (!std::getline(stat_in, stat)) {
            continue;  // process exited meanwhile
        }
        const auto open = stat.find('(');
        const auto close = stat.rfind(')');
        if (open == std::string::npos || close == std::string::npos || close < open) {
            continue;
        }
        ProcessInfo p;
        p.name = stat.substr(open + 1, close - open - 1);
        std::istringstream rest(stat.substr(close + 2));
        std::vector<std::string> f;
        for (std::string tok; rest >> tok;) {
            f.push_back(tok);
        }
        // Fields after the command: state is f[0]; utime f[11], stime f[12], starttime f[19].
        if (f.size() > 19 && ticks > 0) {
            const double busy = (std::stod(f[11]) + std::stod(f[12])) / ticks;
            const double alive = uptime - std::stod(f[19]) / ticks;
            p.cpu_percent = alive > 0 ? std::clamp(100.0 * busy / alive, 0.0, 100.0) : 0.0;
        }
        std::ifstream statm(entry.path() / "statm");
        double size_pages = 0;
        double resident_pages = 0;
        if (statm >> size_pages >> resident_pages) {
            p.memory_mb = resident_pages * page_mb;
        }
        into.processes.push_back(std::move(p));
    }
    if (ec) {
        throw Error("cannot list " + paths_.proc.string() + ": " + ec.message());
    }
    std::sort(into.processes.begin(), into.processes.end(),
              [](const ProcessInfo& a, const ProcessInfo& b) {
                  return a.cpu_percent != b.cpu_percent ? a.cpu_percent > b.cpu_percent
                                                        : a.name < b.name;
              });
}

void LiveLinuxSource::collect_software(DeviceSnapshot& into) {
    std::ifstream in(paths_.dpkg_status);
    if (!in) {
        throw Error("cannot read " + paths_.dpkg_status.string());
    }
    into.installed_software.clear();
    std::string line;
    std::string name;
    std::string version;
    bool installed = false;
    auto flush = [&] {
        if (installed && !name.empty()) {
            into.installed_software.push_back({name, version});
        }
        name.clear();
        version.clear();
        installed = false;
    };
    while (std::getline(in, line)) {
        if (line.empty()) {
            flush();
        } else if (text::starts_with(line, "Package: ")) {
            name = line.substr(9);
        } else if (text::starts_with(line, "Version: ")) {
            version = line.substr(9);
        } else if (text::starts_with(line, "Status: ")) {
            installed = line.find(" installed") != std::string::npos;
        }
    }
    flush();
}

void LiveLinuxSource::collect_network(DeviceSnapshot& into) {
    into.network = NetworkInfo{};
    ifaddrs* list = nullptr;
    if (getifaddrs(&list) != 0) {
        throw Error("getifaddrs failed");
    }
    for (ifaddrs* it = list; it; it = it->ifa_next) {
        if (!it->ifa_addr || it->ifa_addr->sa_family != AF_INET) {
            continue;
        }
        char buf[INET_ADDRSTRLEN] = {};
        const auto* sin = reinterpret_cast<const sockaddr_in*>(it->ifa_addr);
        inet_ntop(AF_INET, &sin->sin_addr, buf, sizeof buf);
        into.network.interfaces.push_back({it->ifa_name, buf});
    }
    freeifaddrs(list);
    // SSID and link security need NetworkManager/iw; left absent.
}

void LiveLinuxSource::collect_downloads(DeviceSnapshot& into) {
    into.downloads.clear();
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(paths_.downloads, ec)) {
        if (!entry.is_regular_file(ec)) {
            continue;
        }
        DownloadInfo d;
        d.filename = entry.path().filename().string();
        d.size_bytes = entry.file_size(ec);
        char origin[512] = {};
        const auto n = getxattr(entry.path().c_str(), "user.xdg.origin.url", origin,
                                sizeof origin - 1);
        d.origin_hint = n > 0 ? std::string(origin, static_cast<std::size_t>(n)) : "unknown";
        into.downloads.push_back(std::move(d));
    }
    if (ec) {
        throw Error("cannot list " + paths_.downloads.string() + ": " + ec.message());
    }
    std::sort(into.downloads.begin(), into.downloads.end(),
              [](const DownloadInfo& a, const DownloadInfo& b) { return a.filename < b.filename; });
}

void LiveLinuxSource::collect_security(DeviceSnapshot& into) {
    std::ifstream in(paths_.ufw_conf);
    if (!in) {
        throw Error("cannot read " + paths_.ufw_conf.string());
    }
    bool enabled = false;
    for (std::string line; std::getline(in, line);) {
        line = text::trim(line);
        if (text::starts_with(line, "ENABLED=")) {
            enabled = text::to_lower(line.substr(8)) == "yes";
        }
    }
    into.security_settings.firewall_enabled = enabled;
    bool av = false;
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(paths_.proc, ec)) {
        if (all_digits(entry.path().filename().string()) &&
            read_first_line(entry.path() / "comm") == "clamd") {
            av = true;
            break;
        }
    }
    into.security_settings.antivirus_active = av;
}

void LiveLinuxSource::collect_hardware(DeviceSnapshot& into) {
    into.hardware_peripherals.clear();
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(paths_.usb_devices, ec)) {
        const auto product = entry.path() / "product";
        if (fs::exists(product, ec)) {
            auto name = read_first_line(product);
            if (!name.empty()) {
                into.hardware_peripherals.push_back(name);
            }
        }
    }
    std::sort(into.hardware_peripherals.begin(), into.hardware_peripherals.end());
}

} // namespace cluedesk::cc
