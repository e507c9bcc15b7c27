#pragma once

#include "cluedesk/cc/source.hpp"
#include "cluedesk/common/clock.hpp"

#include <condition_variable>
#include <memory>
#include <mutex>
#include <thread>

namespace cluedesk::cc {

// Keeps the latest DeviceSnapshot and serves category slices from it.
// Refresh either runs on its own thread (start()) or is driven by the caller
// (refresh_once / refresh_if_due) for deterministic simulations.
class ClueCollector {
public:
    // Throws ContractError unless period_seconds > 0.
    ClueCollector(std::shared_ptr<SnapshotSource> source, Clock& clock,
                  double period_seconds = 5.0);
    ~ClueCollector();

    ClueCollector(const ClueCollector&) = delete;
    ClueCollector& operator=(const ClueCollector&) = delete;

    void start();
    void stop();

    std::shared_ptr<const DeviceSnapshot> refresh_once();
    // Refreshes when no snapshot exists or the latest is a full period old.
    bool refresh_if_due();

    // Null before the first snapshot.
    std::shared_ptr<const DeviceSnapshot> latest() const;
    std::size_t snapshot_count() const;
    // Real-time wait until at least `n` snapshots exist.
    bool wait_for_count(std::size_t n, std::chrono::milliseconds timeout) const;

    // Throws ConsentRequiredError without consent, NotReadyError before the
    // first snapshot.
    CategorySlice query(InfoCategory category, bool consent) const;

    Millis period_ms() const { return period_ms_; }

private:
    void loop(std::stop_token stop);

    std::shared_ptr<SnapshotSource> source_;
    Clock& clock_;
    Millis period_ms_;
    std::mutex refresh_mutex_;  // serializes collection
    mutable std::mutex mutex_;
    mutable std::condition_variable cv_;
    std::shared_ptr<const DeviceSnapshot> latest_;
    std::size_t count_ = 0;
    std::jthread worker_;
};

} // namespace cluedesk::cc
