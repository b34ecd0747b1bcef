#pragma once

#include <string>
#include <utility>

#include "claimcheck/clock.hpp"
#include "claimcheck/error.hpp"

namespace claimcheck {

/// Failure reported by a backend or translator call. Transient failures
/// (network errors, HTTP 429/5xx) are retried; others are not.
class BackendFailure : public Error {
public:
    BackendFailure(const std::string& message, bool transient)
        : Error(ErrorKind::BackendUnavailable, message), transient_(transient) {}
    bool transient() const noexcept { return transient_; }

private:
    bool transient_;
};

struct RetryPolicy {
    int max_retries = 3;
    Clock::duration backoff_base{500};
};

/// Calls fn() up to max_retries + 1 times, sleeping backoff_base * 2^k on the
/// clock between attempts. Non-transient failures propagate immediately.
/// `attempts` receives the number of calls made.
template <typename F>
auto call_with_retries(F&& fn, const RetryPolicy& policy, Clock& clock, int* attempts = nullptr)
    -> decltype(fn()) {
    for (int attempt = 0;; ++attempt) {
        if (attempts) *attempts = attempt + 1;
        try {
            return fn();
        } catch (const BackendFailure& e) {
            if (!e.transient() || attempt >= policy.max_retries) throw;
        }
        clock.sleep_for(policy.backoff_base * (1LL << attempt));
    }
}

}  // namespace claimcheck
