#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "normalizer.hpp"
#include "random.hpp"
#include "sim_time.hpp"

namespace dynwarden {

struct Range {
  double lo = 0.0;
  double hi = 0.0;
  bool operator==(const Range&) const = default;
};

struct NoWarden {
  bool operator==(const NoWarden&) const = default;
};

// Time-invariant ruleset, sampled once per trial.
struct RegularWarden {
  double rr_fraction = 0.95;
  bool operator==(const RegularWarden&) const = default;
};

struct DynamicWarden {
  double rd_fraction = 0.4;
  double reload_interval = 2.0;  // f_R, seconds
  bool operator==(const DynamicWarden&) const = default;
};

// f_R and the subset size are redrawn at every reload.
struct RandomDynamicWarden {
  Range reload_interval{1.0, 10.0};
  Range rd_fraction{0.2, 1.0};
  bool operator==(const RandomDynamicWarden&) const = default;
};

using WardenKind =
    std::variant<NoWarden, RegularWarden, DynamicWarden, RandomDynamicWarden>;

enum class Rounding : std::uint8_t { HalfUp, Floor, Ceil };

// fraction * |R_T| as a rule count. The epsilon absorbs representation error
// such as 0.95 * 50 landing just below 47.5.
inline std::size_t rules_for_fraction(double fraction,
                                      Rounding rounding = Rounding::HalfUp) {
  const double x = fraction * static_cast<double>(kRuleCount);
  double r = 0.0;
  switch (rounding) {
    case Rounding::HalfUp: r = std::floor(x + 0.5 + 1e-9); break;
    case Rounding::Floor: r = std::floor(x + 1e-9); break;
    case Rounding::Ceil: r = std::ceil(x - 1e-9); break;
  }
  if (r < 0) r = 0;
  if (r > static_cast<double>(kRuleCount)) r = kRuleCount;
  return static_cast<std::size_t>(r);
}

// Standard parameterizations V1-V4 of the random-dynamic warden.
enum class RandomVariant : std::uint8_t { V1, V2, V3, V4 };

inline RandomDynamicWarden random_variant(RandomVariant v) {
  switch (v) {
    case RandomVariant::V1: return {{1.0, 35.0}, {0.02, 1.0}};
    case RandomVariant::V2: return {{1.0, 35.0}, {0.2, 0.4}};
    case RandomVariant::V3: return {{1.0, 10.0}, {0.2, 1.0}};
    case RandomVariant::V4: return {{1.0, 10.0}, {0.2, 0.4}};
  }
  throw std::invalid_argument("unknown variant");
}

inline std::string_view to_string(RandomVariant v) {
  constexpr std::string_view names[] = {"V1", "V2", "V3", "V4"};
  return names[static_cast<std::size_t>(v)];
}

inline void validate(const WardenKind& kind) {
  auto fraction_ok = [](double f) { return f > 0.0 && f <= 1.0; };
  std::visit(
      [&](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, RegularWarden>) {
          if (!fraction_ok(k.rr_fraction))
            throw std::invalid_argument("rr fraction must be in (0,1]");
        } else if constexpr (std::is_same_v<T, DynamicWarden>) {
          if (!fraction_ok(k.rd_fraction))
            throw std::invalid_argument("rd fraction must be in (0,1]");
          if (!(k.reload_interval > 0.0))
            throw std::invalid_argument("reload interval must be positive");
        } else if constexpr (std::is_same_v<T, RandomDynamicWarden>) {
          if (!(k.reload_interval.lo > 0.0) ||
              k.reload_interval.lo > k.reload_interval.hi)
            throw std::invalid_argument("bad reload interval range");
          if (!fraction_ok(k.rd_fraction.lo) || !fraction_ok(k.rd_fraction.hi) ||
              k.rd_fraction.lo > k.rd_fraction.hi)
            throw std::invalid_argument("bad rd fraction range");
        }
      },
      kind);
}

inline std::string describe(const WardenKind& kind) {
  return std::visit(
      [](const auto& k) -> std::string {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, NoWarden>) {
          return "none";
        } else if constexpr (std::is_same_v<T, RegularWarden>) {
          return "regular(rr=" + std::to_string(k.rr_fraction) + ")";
        } else if constexpr (std::is_same_v<T, DynamicWarden>) {
          return "dynamic(rd=" + std::to_string(k.rd_fraction) +
                 ",fr=" + std::to_string(k.reload_interval) + ")";
        } else {
          return "random(fr=[" + std::to_string(k.reload_interval.lo) + "," +
                 std::to_string(k.reload_interval.hi) + "],rd=[" +
                 std::to_string(k.rd_fraction.lo) + "," +
                 std::to_string(k.rd_fraction.hi) + "])";
        }
      },
      kind);
}

class ClockRegression : public std::logic_error {
 public:
  ClockRegression(SimTime last, SimTime now)
      : std::logic_error("warden clock regressed from " + format_seconds(last) +
                         " to " + format_seconds(now)) {}
};

struct ReloadRecord {
  SimTime at;              // boundary time the new subset takes effect
  std::size_t size;        // |active|
  SimTime interval;        // f_R in force until the next reload
};

class WardenState {
 public:
  WardenState(WardenKind kind, std::uint64_t seed,
              Rounding rounding = Rounding::HalfUp)
      : kind_(std::move(kind)), rng_(seed), rounding_(rounding) {
    validate(kind_);
    std::visit([this](const auto& k) { init(k); }, kind_);
  }

  const WardenKind& kind() const { return kind_; }
  const RuleSet& active() const { return active_; }
  SimTime next_reload() const { return next_reload_; }
  const DispositionCounters& counters() const { return counters_; }
  std::uint64_t reload_count() const { return reload_count_; }
  const std::vector<ReloadRecord>& reload_history() const { return history_; }

  // Performs every reload whose boundary is <= now, in order. Each boundary
  // draws a fresh subset independent of the previous one.
  void maybe_reload(SimTime now) {
    if (now < last_now_) throw ClockRegression(last_now_, now);
    last_now_ = now;
    while (now >= next_reload_) {
      const SimTime boundary = next_reload_;
      std::visit([this](const auto& k) { redraw(k); }, kind_);
      next_reload_ = boundary + interval_;
      ++reload_count_;
      history_.push_back({boundary, active_.size(), interval_});
    }
  }

  RulesetOutcome process(const Packet& p, SimTime now) {
    maybe_reload(now);
    return apply_ruleset(active_, p, counters_);
  }

 private:
  void init(const NoWarden&) {}

  void init(const RegularWarden& k) {
    resample(rules_for_fraction(k.rr_fraction, rounding_));
  }

  void init(const DynamicWarden& k) {
    interval_ = SimTime::from_seconds(k.reload_interval);
    resample(rules_for_fraction(k.rd_fraction, rounding_));
    next_reload_ = interval_;
    history_.push_back({SimTime{}, active_.size(), interval_});
  }

  void init(const RandomDynamicWarden& k) {
    redraw(k);
    next_reload_ = interval_;
    history_.push_back({SimTime{}, active_.size(), interval_});
  }

  void redraw(const NoWarden&) {}
  void redraw(const RegularWarden&) {}

  void redraw(const DynamicWarden& k) {
    resample(rules_for_fraction(k.rd_fraction, rounding_));
  }

  void redraw(const RandomDynamicWarden& k) {
    interval_ = SimTime::from_seconds(
        rng_.uniform(k.reload_interval.lo, k.reload_interval.hi));
    if (interval_ <= SimTime{}) interval_ = SimTime::from_ticks(1);
    const auto lo = rules_for_fraction(k.rd_fraction.lo, rounding_);
    const auto hi = rules_for_fraction(k.rd_fraction.hi, rounding_);
    resample(static_cast<std::size_t>(rng_.between(
        static_cast<std::int64_t>(lo), static_cast<std::int64_t>(hi))));
  }

  void resample(std::size_t size) {
    active_ = RuleSet::of(rng_.sample_without_replacement(kRuleCount, size));
  }

  WardenKind kind_;
  Rng rng_;
  Rounding rounding_;
  RuleSet active_;
  SimTime interval_ = SimTime::infinity();
  SimTime next_reload_ = SimTime::infinity();
  SimTime last_now_{};
  DispositionCounters counters_;
  std::uint64_t reload_count_ = 0;
  std::vector<ReloadRecord> history_;
};

inline WardenState init_warden(const WardenKind& kind, std::uint64_t seed,
                               Rounding rounding = Rounding::HalfUp) {
  return WardenState(kind, seed, rounding);
}

}  // namespace dynwarden
