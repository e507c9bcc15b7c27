#pragma once

#include <condition_variable>
#include <cstdint>
#include <mutex>
#include <stop_token>

namespace cluedesk {

// Milliseconds since the Unix epoch.
using Millis = std::int64_t;

class Clock {
public:
    virtual ~Clock() = default;
    virtual Millis now() const = 0;
    // Blocks until now() >= deadline. Returns false if stop was requested first.
    virtual bool wait_until(Millis deadline, std::stop_token stop) = 0;
};

class SystemClock final : public Clock {
public:
    Millis now() const override;
    bool wait_until(Millis deadline, std::stop_token stop) override;

private:
    std::mutex mutex_;
    std::condition_variable_any cv_;
};

// Time only moves when the test says so.
class ManualClock final : public Clock {
public:
    explicit ManualClock(Millis start = 0) : now_(start) {}

    Millis now() const override;
    bool wait_until(Millis deadline, std::stop_token stop) override;

    void set(Millis t);
    void advance(Millis delta);

private:
    mutable std::mutex mutex_;
    std::condition_variable_any cv_;
    Millis now_;
};

} // namespace cluedesk
