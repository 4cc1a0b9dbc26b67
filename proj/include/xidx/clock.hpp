#pragma once

#include <chrono>
#include <memory>
#include <mutex>

namespace xidx {

// Time source abstraction so rate limiting and retry backoff are testable
// without real sleeps.
class Clock {
 public:
  virtual ~Clock() = default;
  virtual std::chrono::system_clock::time_point now() = 0;
  virtual void sleep_for(std::chrono::milliseconds d) = 0;
};

class SystemClock : public Clock {
 public:
  std::chrono::system_clock::time_point now() override { return std::chrono::system_clock::now(); }
  void sleep_for(std::chrono::milliseconds d) override;
};

// Deterministic clock: sleep_for just advances the current time.
class ManualClock : public Clock {
 public:
  explicit ManualClock(std::chrono::system_clock::time_point start = {}) : now_(start) {}
  std::chrono::system_clock::time_point now() override;
  void sleep_for(std::chrono::milliseconds d) override;
  void advance(std::chrono::milliseconds d);
  std::chrono::milliseconds total_slept() const;

 private:
  mutable std::mutex mutex_;
  std::chrono::system_clock::time_point now_;
  std::chrono::milliseconds slept_{0};
};

std::shared_ptr<Clock> system_clock();

// Sliding-window limiter: at most max_per_second acquisitions within any
// one-second window, enforced by sleeping on the shared clock.
class RateLimiter {
 public:
  RateLimiter(double max_per_second, std::shared_ptr<Clock> clock);
  void acquire();

 private:
  double max_per_second_;
  std::shared_ptr<Clock> clock_;
  std::mutex mutex_;
  std::vector<std::chrono::system_clock::time_point> window_;
};

}  // namespace xidx
