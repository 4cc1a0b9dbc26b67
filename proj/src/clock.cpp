#include "xidx/clock.hpp"

#include <thread>
#include <vector>

namespace xidx {

void SystemClock::sleep_for(std::chrono::milliseconds d) { std::this_thread::sleep_for(d); }

std::chrono::system_clock::time_point ManualClock::now() {
  std::lock_guard lock(mutex_);
  return now_;
}

void ManualClock::sleep_for(std::chrono::milliseconds d) {
  std::lock_guard lock(mutex_);
  now_ += d;
  slept_ += d;
}

void ManualClock::advance(std::chrono::milliseconds d) {
  std::lock_guard lock(mutex_);
  now_ += d;
}

std::chrono::milliseconds ManualClock::total_slept() const {
  std::lock_guard lock(mutex_);
  return slept_;
}

std::shared_ptr<Clock> system_clock() {
  static auto instance = std::make_shared<SystemClock>();
  return instance;
}

RateLimiter::RateLimiter(double max_per_second, std::shared_ptr<Clock> clock)
    : max_per_second_(max_per_second), clock_(std::move(clock)) {}

void RateLimiter::acquire() {
  using namespace std::chrono;
  std::lock_guard lock(mutex_);
  const auto limit = static_cast<std::size_t>(max_per_second_);
  for (;;) {
    auto now = clock_->now();
    auto cutoff = now - seconds(1);
    std::erase_if(window_, [&](auto t) { return t <= cutoff; });
    if (window_.size() < limit) break;
    auto wake = window_.front() + seconds(1);
    auto wait = duration_cast<milliseconds>(wake - now);
    clock_->sleep_for(wait > milliseconds(0) ? wait : milliseconds(1));
  }
  window_.push_back(clock_->now());
}

}  // namespace xidx
