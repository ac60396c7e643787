#pragma once

#include <chrono>

namespace adaptivemon::peer {

/// Source of timestamps, in seconds.
class Clock {
 public:
  virtual ~Clock() = default;
  virtual double now() const = 0;
};

/// Seconds elapsed since construction, from the monotonic system clock.
class WallClock final : public Clock {
 public:
  WallClock() : start_(std::chrono::steady_clock::now()) {}

  double now() const override {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

class ManualClock final : public Clock {
 public:
  explicit ManualClock(double start = 0.0) : now_(start) {}

  double now() const override { return now_; }
  void set(double t) { now_ = t; }
  void advance(double dt) { now_ += dt; }

 private:
  double now_;
};

}  // namespace adaptivemon::peer
