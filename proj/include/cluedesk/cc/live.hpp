#pragma once

#include "cluedesk/cc/source.hpp"

#include <filesystem>

namespace cluedesk::cc {

// Best-effort Linux collector reading procfs, sysfs, dpkg and ufw state.
// Categories whose backing files are missing report `unsupported`.
class LiveLinuxSource final : public SnapshotSource {
public:
    struct Paths {
        std::filesystem::path proc = "/proc";
        std::filesystem::path os_release = "/etc/os-release";
        std::filesystem::path dpkg_status = "/var/lib/dpkg/status";
        std::filesystem::path ufw_conf = "/etc/ufw/ufw.conf";
        std::filesystem::path usb_devices = "/sys/bus/usb/devices";
        std::filesystem::path downloads;  // default: $HOME/Downloads
    };

    LiveLinuxSource();
    explicit LiveLinuxSource(Paths paths);

    bool supports(InfoCategory category) const override;
    void collect(InfoCategory category, DeviceSnapshot& into) override;

private:
    void collect_processes(DeviceSnapshot& into);
    void collect_software(DeviceSnapshot& into);
    void collect_network(DeviceSnapshot& into);
    void collect_downloads(DeviceSnapshot& into);
    void collect_security(DeviceSnapshot& into);
    void collect_hardware(DeviceSnapshot& into);

    Paths paths_;
};

} // namespace cluedesk::cc
