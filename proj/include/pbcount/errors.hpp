#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <stdexcept>

namespace pbcount {

class TimeoutError : public std::runtime_error {
public:
    TimeoutError() : std::runtime_error("time limit exceeded") {}
};

class ResourceExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Clock = std::chrono::steady_clock;

/// Cooperative limits checked from inside long-running loops.
struct Limits {
    std::optional<Clock::time_point> deadline;
    /// 0 means unlimited.
    std::size_t maxNodes = 0;

    void checkDeadline() const {
        if (deadline && Clock::now() > *deadline) throw TimeoutError();
    }
};

}  // namespace pbcount
