#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace dynwarden {

// Virtual time with microsecond resolution. Integer ticks keep schedules such
// as k * f_R exact and make event ordering identical across platforms.
class SimTime {
 public:
  using rep = std::int64_t;
  static constexpr rep kTicksPerSecond = 1'000'000;

  constexpr SimTime() = default;

  static constexpr SimTime from_ticks(rep ticks) { return SimTime{ticks}; }

  static SimTime from_seconds(double seconds) {
    if (!std::isfinite(seconds)) {
      throw std::invalid_argument("SimTime: non-finite seconds");
    }
    return SimTime{static_cast<rep>(std::llround(seconds * kTicksPerSecond))};
  }

  static constexpr SimTime infinity() {
    return SimTime{std::numeric_limits<rep>::max()};
  }

  constexpr rep ticks() const { return ticks_; }
  constexpr double seconds() const {
    return static_cast<double>(ticks_) / kTicksPerSecond;
  }
  constexpr bool is_infinite() const { return *this == infinity(); }

  constexpr auto operator<=>(const SimTime&) const = default;

  constexpr SimTime& operator+=(SimTime d) {
    ticks_ += d.ticks_;
    return *this;
  }
  friend constexpr SimTime operator+(SimTime a, SimTime b) { return a += b; }
  friend constexpr SimTime operator-(SimTime a, SimTime b) {
    return SimTime{a.ticks_ - b.ticks_};
  }
  friend constexpr SimTime operator*(std::int64_t k, SimTime d) {
    return SimTime{k * d.ticks_};
  }

 private:
  constexpr explicit SimTime(rep ticks) : ticks_(ticks) {}
  rep ticks_ = 0;
};

inline SimTime seconds(double s) { return SimTime::from_seconds(s); }

// Fixed six-decimal rendering, independent of locale.
inline std::string format_seconds(SimTime t) {
  const auto ticks = t.ticks();
  const bool negative = ticks < 0;
  const auto mag = negative ? -ticks : ticks;
  std::string frac = std::to_string(mag % SimTime::kTicksPerSecond);
  frac.insert(0, 6 - frac.size(), '0');
  return (negative ? "-" : "") + std::to_string(mag / SimTime::kTicksPerSecond) +
         "." + frac;
}

}  // namespace dynwarden
