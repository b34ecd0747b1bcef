#pragma once

#include <atomic>
#include <chrono>
#include <deque>
#include <mutex>
#include <thread>

namespace claimcheck {

/// Time source for retry backoff, rate limiting and latency measurement.
class Clock {
public:
    using duration = std::chrono::milliseconds;
    using time_point = std::chrono::time_point<std::chrono::steady_clock, duration>;

    virtual ~Clock() = default;
    virtual time_point now() = 0;
    virtual void sleep_until(time_point t) = 0;
    void sleep_for(duration d) { sleep_until(now() + d); }
};

class SystemClock final : public Clock {
public:
    time_point now() override {
        return std::chrono::time_point_cast<duration>(std::chrono::steady_clock::now());
    }
    void sleep_until(time_point t) override { std::this_thread::sleep_until(t); }

    static SystemClock& instance() {
        static SystemClock clock;
        return clock;
    }
};

/// Virtual clock for tests: sleeping jumps time forward instantly.
class SimulatedClock final : public Clock {
public:
    time_point now() override { return time_point(duration(ms_.load())); }
    void sleep_until(time_point t) override {
        auto target = t.time_since_epoch().count();
        auto cur = ms_.load();
        while (cur < target && !ms_.compare_exchange_weak(cur, target)) {
        }
    }
    void advance(duration d) { ms_ += d.count(); }

private:
    std::atomic<long long> ms_{0};
};

/// Sliding-window limiter: at most `per_minute` permits in any 60 s window.
/// acquire() blocks (on the supplied clock) until a permit is available.
class RateLimiter {
public:
    RateLimiter(int per_minute, Clock& clock) : per_minute_(per_minute), clock_(clock) {}

    Clock::time_point acquire() {
        std::lock_guard lock(mu_);
        for (;;) {
            const auto now = clock_.now();
            while (!issued_.empty() && issued_.front() <= now - window_) issued_.pop_front();
            if (static_cast<int>(issued_.size()) < per_minute_) {
                issued_.push_back(now);
                return now;
            }
            clock_.sleep_until(issued_.front() + window_);
        }
    }

private:
    static constexpr Clock::duration window_{60'000};
    int per_minute_;
    Clock& clock_;
    std::mutex mu_;
    std::deque<Clock::time_point> issued_;
};

}  // namespace claimcheck
