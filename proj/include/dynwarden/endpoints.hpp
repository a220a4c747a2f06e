#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "channels.hpp"
#include "packet.hpp"
#include "random.hpp"
#include "sim_time.hpp"

namespace dynwarden {

// Protocol constants. Probe burst, CR timeout and inter-cycle pause come from
// the test-bed description; COM pacing and probe spacing are our choices.
struct EndpointTiming {
  SimTime com_gap = seconds(0.75);
  SimTime probe_spacing = seconds(0.05);
  int probe_burst = 5;
  int com_burst = 5;
  SimTime cr_timeout = seconds(5.0);
  SimTime nel_pause = seconds(1.0);
};

enum class SenderStrategy : std::uint8_t { AdaptiveSwitching, FixedSingleChannel };

// How the sender picks the next channel to probe.
//   Sweep:          random order over all channels, every channel (including
//                   ones believed non-blocked) is re-verified once per sweep.
//   SkipNonBlocked: uniform over channels not currently non-blocked; such
//                   channels are never re-probed.
enum class ProbeSelection : std::uint8_t { Sweep, SkipNonBlocked };

struct NelMessage {
  enum class Type : std::uint8_t { ANNOUNCE, RESULT };
  Type type = Type::ANNOUNCE;
  std::uint64_t announcement = 0;
  ChannelId channel;
  bool blocked = false;

  static NelMessage announce(std::uint64_t id, ChannelId c) {
    return {Type::ANNOUNCE, id, c, false};
  }
  static NelMessage result(std::uint64_t id, ChannelId c, bool blocked) {
    return {Type::RESULT, id, c, blocked};
  }
  bool operator==(const NelMessage&) const = default;
};

struct NelCycle {
  std::optional<NelMessage> announce;  // empty when nothing is eligible
  std::vector<Packet> probes;          // send_time already set
  SimTime next_cycle;
};

class CovertSender {
 public:
  CovertSender(std::uint64_t seed, EndpointTiming timing,
               SenderStrategy strategy = SenderStrategy::AdaptiveSwitching,
               ProbeSelection selection = ProbeSelection::Sweep)
      : rng_(seed), timing_(timing), strategy_(strategy), selection_(selection) {
    refill_untested();
    if (strategy_ == SenderStrategy::FixedSingleChannel) {
      fixed_channel_ = ChannelId(rng_.below(kChannelCount));
    }
  }

  const std::set<ChannelId>& non_blocked() const { return non_blocked_; }
  const std::vector<ChannelId>& untested() const { return untested_; }
  std::optional<ChannelId> fixed_channel() const { return fixed_channel_; }
  SenderStrategy strategy() const { return strategy_; }
  std::uint64_t com_sent() const { return com_sent_; }
  std::uint64_t probes_sent() const { return probes_sent_; }
  std::uint64_t announcements() const { return next_announcement_; }

  // Announce one channel, emit its probe burst, and pace the next cycle
  // without waiting for the verdict.
  NelCycle start_nel_cycle(SimTime now) {
    NelCycle cycle;
    const SimTime burst_span =
        static_cast<std::int64_t>(timing_.probe_burst - 1) * timing_.probe_spacing;
    cycle.next_cycle = now + burst_span + timing_.nel_pause;

    const auto chosen = choose_probe_channel();
    if (!chosen) return cycle;

    const auto id = next_announcement_++;
    cycle.announce = NelMessage::announce(id, *chosen);
    const ChannelSpec& spec = channel(*chosen);
    for (int k = 0; k < timing_.probe_burst; ++k) {
      const SimTime t = now + static_cast<std::int64_t>(k) * timing_.probe_spacing;
      cycle.probes.push_back(encode(spec, default_packet(PacketKind::PROBE, seq_++), 1)
                                 .sent_at(t)
                                 .with_channel_hint(chosen->index()));
    }
    probes_sent_ += cycle.probes.size();
    return cycle;
  }

  // Returns true when the non-blocked set goes from empty to non-empty.
  bool on_result(const NelMessage& msg) {
    if (msg.type != NelMessage::Type::RESULT) return false;
    const bool was_empty = non_blocked_.empty();
    if (msg.blocked) {
      non_blocked_.erase(msg.channel);
    } else {
      non_blocked_.insert(msg.channel);
    }
    return was_empty && !non_blocked_.empty();
  }

  bool com_ready() const {
    return strategy_ == SenderStrategy::FixedSingleChannel || burst_left_ > 0 ||
           !non_blocked_.empty();
  }

  // Next COM packet, or nothing if the sender has to wait for NEL. A started
  // burst is always completed on its channel.
  std::optional<Packet> com_tick(SimTime now) {
    if (burst_left_ == 0) {
      if (strategy_ == SenderStrategy::FixedSingleChannel) {
        burst_channel_ = *fixed_channel_;
      } else if (non_blocked_.empty()) {
        return std::nullopt;
      } else {
        const std::vector<ChannelId> known(non_blocked_.begin(), non_blocked_.end());
        burst_channel_ = rng_.pick(known);
      }
      burst_left_ = timing_.com_burst;
      ++bursts_;
    }
    --burst_left_;
    ++com_sent_;
    Packet p = encode(channel(burst_channel_), default_packet(PacketKind::COM, seq_++), 1);
    return p.sent_at(now).with_channel_hint(burst_channel_.index());
  }

  ChannelId burst_channel() const { return burst_channel_; }
  int burst_remaining() const { return burst_left_; }
  std::uint64_t bursts() const { return bursts_; }

 private:
  void refill_untested() {
    untested_.clear();
    for (std::size_t i = 0; i < kChannelCount; ++i) untested_.emplace_back(i);
  }

  std::optional<ChannelId> choose_probe_channel() {
    if (selection_ == ProbeSelection::SkipNonBlocked) {
      std::vector<ChannelId> candidates;
      for (std::size_t i = 0; i < kChannelCount; ++i) {
        if (!non_blocked_.contains(ChannelId(i))) candidates.emplace_back(i);
      }
      if (candidates.empty()) return std::nullopt;
      return rng_.pick(candidates);
    }
    if (untested_.empty()) refill_untested();
    const auto j = rng_.below(untested_.size());
    const ChannelId c = untested_[j];
    untested_.erase(untested_.begin() + static_cast<std::ptrdiff_t>(j));
    return c;
  }

  Rng rng_;
  EndpointTiming timing_;
  SenderStrategy strategy_;
  ProbeSelection selection_;
  std::vector<ChannelId> untested_;
  std::set<ChannelId> non_blocked_;
  std::optional<ChannelId> fixed_channel_;
  ChannelId burst_channel_;
  int burst_left_ = 0;
  std::uint64_t bursts_ = 0;
  std::uint64_t seq_ = 0;
  std::uint64_t next_announcement_ = 0;
  std::uint64_t com_sent_ = 0;
  std::uint64_t probes_sent_ = 0;
};

class CovertReceiver {
 public:
  CovertReceiver(std::uint64_t target, EndpointTiming timing)
      : target_(target), timing_(timing) {}

  struct Pending {
    std::uint64_t announcement;
    ChannelId channel;
    SimTime deadline;
    bool resolved = false;
  };

  // Returns the verdict deadline for this announcement.
  SimTime on_announce(const NelMessage& msg, SimTime now) {
    if (!start_) start_ = now;
    const SimTime deadline = now + timing_.cr_timeout;
    pending_.push_back({msg.announcement, msg.channel, deadline, false});
    return deadline;
  }

  // Probe: the oldest unresolved announcement whose channel decodes a 1 is
  // confirmed. COM: counted if any channel still carries its bit.
  std::optional<NelMessage> on_packet(const Packet& p, SimTime now) {
    if (p.kind() == PacketKind::PROBE) {
      for (auto& pend : pending_) {
        if (pend.resolved || now > pend.deadline) continue;
        if (decode(channel(pend.channel), p) == 1) {
          pend.resolved = true;
          return NelMessage::result(pend.announcement, pend.channel, false);
        }
      }
      return std::nullopt;
    }
    if (p.kind() == PacketKind::COM && !done()) {
      for (const auto& c : catalog()) {
        if (decode(c, p) == 1) {
          if (++received_ == target_) stop_ = now;
          break;
        }
      }
    }
    return std::nullopt;
  }

  std::optional<NelMessage> on_timeout(std::uint64_t announcement) {
    auto it = std::find_if(pending_.begin(), pending_.end(), [&](const Pending& p) {
      return p.announcement == announcement;
    });
    if (it == pending_.end()) return std::nullopt;
    const Pending pend = *it;
    pending_.erase(it);
    if (pend.resolved) return std::nullopt;
    ++blocked_verdicts_;
    return NelMessage::result(pend.announcement, pend.channel, true);
  }

  std::uint64_t received() const { return received_; }
  std::uint64_t target() const { return target_; }
  bool done() const { return received_ >= target_; }
  std::optional<SimTime> start_time() const { return start_; }
  std::optional<SimTime> stop_time() const { return stop_; }
  std::uint64_t blocked_verdicts() const { return blocked_verdicts_; }
  const std::vector<Pending>& pending() const { return pending_; }

 private:
  std::uint64_t target_;
  EndpointTiming timing_;
  std::uint64_t received_ = 0;
  std::uint64_t blocked_verdicts_ = 0;
  std::optional<SimTime> start_;
  std::optional<SimTime> stop_;
  std::vector<Pending> pending_;
};

}  // namespace dynwarden
