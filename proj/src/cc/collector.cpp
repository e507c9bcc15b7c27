#include "cluedesk/cc/collector.hpp"

#include "cluedesk/common/error.hpp"

#include <cmath>

namespace cluedesk::cc {

ClueCollector::ClueCollector(std::shared_ptr<SnapshotSource> source, Clock& clock,
                             double period_seconds)
    : source_(std::move(source)), clock_(clock) {
    if (!(period_seconds > 0.0) || !std::isfinite(period_seconds)) {
        throw ContractError("refresh period must be positive");
    }
    period_ms_ = static_cast<Millis>(std::llround(period_seconds * 1000.0));
    if (period_ms_ < 1) {
        period_ms_ = 1;
    }
}

ClueCollector::~ClueCollector() { stop(); }

void ClueCollector::start() {
    if (!worker_.joinable()) {
        worker_ = std::jthread([this](std::stop_token st) { loop(st); });
    }
}

void ClueCollector::stop() {
    if (worker_.joinable()) {
        worker_.request_stop();
        worker_.join();
    }
}

void ClueCollector::loop(std::stop_token stop) {
    Millis next = clock_.now();
    while (!stop.stop_requested()) {
        refresh_once();
        next += period_ms_;
        const Millis now = clock_.now();
        if (next < now) {
            next = now;
        }
        if (!clock_.wait_until(next, stop)) {
            break;
        }
    }
}

std::shared_ptr<const DeviceSnapshot> ClueCollector::refresh_once() {
    std::lock_guard refresh(refresh_mutex_);
    const auto prev = latest();
    auto snap = std::make_shared<DeviceSnapshot>(prev ? *prev : DeviceSnapshot{});
    for (InfoCategory c : kAllCategories) {
        if (!source_->supports(c)) {
            snap->set_status(c, SliceStatus::Unsupported);
            continue;
        }
        DeviceSnapshot fresh;
        try {
            source_->collect(c, fresh);
            copy_category(fresh, *snap, c);
            snap->set_status(c, SliceStatus::Ok);
        } catch (const std::exception&) {
            snap->set_status(c, SliceStatus::Stale);
        }
    }
    const Millis now = clock_.now();
    snap->taken_at = prev && prev->taken_at > now ? prev->taken_at : now;
    {
        std::lock_guard lock(mutex_);
        latest_ = snap;
        ++count_;
    }
    cv_.notify_all();
    return snap;
}

bool ClueCollector::refresh_if_due() {
    const auto snap = latest();
    if (!snap || clock_.now() - snap->taken_at >= period_ms_) {
        refresh_once();
        return true;
    }
    return false;
}

std::shared_ptr<const DeviceSnapshot> ClueCollector::latest() const {
    std::lock_guard lock(mutex_);
    return latest_;
}

std::size_t ClueCollector::snapshot_count() const {
    std::lock_guard lock(mutex_);
    return count_;
}

bool ClueCollector::wait_for_count(std::size_t n, std::chrono::milliseconds timeout) const {
    std::unique_lock lock(mutex_);
    return cv_.wait_for(lock, timeout, [&] { return count_ >= n; });
}

CategorySlice ClueCollector::query(InfoCategory category, bool consent) const {
    if (!consent) {
        throw ConsentRequiredError("device evidence requires user consent");
    }
    const auto snap = latest();
    if (!snap) {
        throw NotReadyError("no snapshot collected yet");
    }
    return slice_of(*snap, category);
}

} // namespace cluedesk::cc
