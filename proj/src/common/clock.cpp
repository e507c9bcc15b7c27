#include "cluedesk/common/clock.hpp"

#include <chrono>

namespace cluedesk {

Millis SystemClock::now() const {
    using namespace std::chrono;
    return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
}

bool SystemClock::wait_until(Millis deadline, std::stop_token stop) {
    std::unique_lock lock(mutex_);
    while (!stop.stop_requested()) {
        const Millis remaining = deadline - now();
        if (remaining <= 0) {
            return true;
        }
        cv_.wait_for(lock, stop, std::chrono::milliseconds(remaining), [] { return false; });
    }
    return false;
}

Millis ManualClock::now() const {
    std::lock_guard lock(mutex_);
    return now_;
}

bool ManualClock::wait_until(Millis deadline, std::stop_token stop) {
    std::unique_lock lock(mutex_);
    return cv_.wait(lock, stop, [&] { return now_ >= deadline; });
}

void ManualClock::set(Millis t) {
    {
        std::lock_guard lock(mutex_);
        now_ = t;
    }
    cv_.notify_all();
}

void ManualClock::advance(Millis delta) {
    {
        std::lock_guard lock(mutex_);
        now_ += delta;
    }
    cv_.notify_all();
}

} // namespace cluedesk
