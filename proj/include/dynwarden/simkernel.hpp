#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "endpoints.hpp"
#include "random.hpp"
#include "sim_time.hpp"
#include "warden.hpp"

namespace dynwarden {

// Tie-break order for events at the same virtual time.
enum class EventPriority : std::uint8_t {
  NelLink = 0,
  WardenLink = 1,
  Timer = 2,
  ReloadCheck = 3,
};

class SchedulingInPast : public std::logic_error {
 public:
  SchedulingInPast(SimTime at, SimTime now)
      : std::logic_error("event scheduled at " + format_seconds(at) +
                         " before current time " + format_seconds(now)) {}
};

template <typename Payload>
struct Event {
  SimTime time;
  EventPriority priority;
  std::uint64_t seq;
  Payload payload;
};

// Min-queue on (time, priority, insertion seq). Dequeue order is a total
// order, so a run is reproducible from its inputs alone.
template <typename Payload>
class EventQueue {
 public:
  void schedule(SimTime at, EventPriority prio, Payload payload) {
    if (at < now_) throw SchedulingInPast(at, now_);
    heap_.push(Event<Payload>{at, prio, next_seq_++, std::move(payload)});
  }

  Event<Payload> pop() {
    Event<Payload> ev = heap_.top();
    heap_.pop();
    now_ = ev.time;
    return ev;
  }

  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }
  SimTime now() const { return now_; }
  SimTime peek_time() const { return heap_.top().time; }

 private:
  struct Later {
    bool operator()(const Event<Payload>& a, const Event<Payload>& b) const {
      if (a.time != b.time) return a.time > b.time;
      if (a.priority != b.priority) return a.priority > b.priority;
      return a.seq > b.seq;
    }
  };
  std::priority_queue<Event<Payload>, std::vector<Event<Payload>>, Later> heap_;
  SimTime now_{};
  std::uint64_t next_seq_ = 0;
};

struct LinkConfig {
  SimTime latency = seconds(0.01);
  double loss_prob = 0.0;
};

struct LinkCounters {
  std::uint64_t sent = 0;
  std::uint64_t dropped = 0;
  std::uint64_t delivered = 0;
  bool operator==(const LinkCounters&) const = default;
};

class Link {
 public:
  Link(LinkConfig cfg, std::uint64_t seed) : cfg_(cfg), rng_(seed) {
    if (cfg_.latency < SimTime{}) throw std::invalid_argument("negative link latency");
    if (!(cfg_.loss_prob >= 0.0 && cfg_.loss_prob <= 1.0))
      throw std::invalid_argument("loss probability outside [0,1]");
  }

  // Delivery time, or nothing when the link drops the transmission.
  std::optional<SimTime> transmit(SimTime now) {
    ++counters_.sent;
    if (rng_.bernoulli(cfg_.loss_prob)) {
      ++counters_.dropped;
      return std::nullopt;
    }
    return now + cfg_.latency;
  }

  void mark_delivered() { ++counters_.delivered; }
  const LinkCounters& counters() const { return counters_; }
  const LinkConfig& config() const { return cfg_; }

 private:
  LinkConfig cfg_;
  Rng rng_;
  LinkCounters counters_;
};

struct TrialConfig {
  WardenKind warden = NoWarden{};
  std::uint64_t target = 400;
  SenderStrategy strategy = SenderStrategy::AdaptiveSwitching;
  ProbeSelection probe_selection = ProbeSelection::Sweep;
  EndpointTiming timing;
  LinkConfig warden_link;
  LinkConfig nel_link;
  Rounding rounding = Rounding::HalfUp;
  // Virtual-time cap as a multiple of the no-warden completion time.
  double timeout_factor = 10.0;
};

// No-warden completion time: target COM packets at the pacing gap, plus one
// NEL cycle to find the first channel.
inline SimTime no_warden_baseline(const TrialConfig& cfg) {
  return static_cast<std::int64_t>(cfg.target) * cfg.timing.com_gap +
         cfg.timing.nel_pause;
}

inline SimTime time_cap(const TrialConfig& cfg) {
  return SimTime::from_seconds(cfg.timeout_factor *
                               no_warden_baseline(cfg).seconds());
}

struct TrialResult {
  SimTime start;        // first ANNOUNCE seen by the receiver
  SimTime stop;         // receiver reached the target
  std::uint64_t normalized = 0;
  std::uint64_t forwarded = 0;
  std::uint64_t total_packets = 0;  // warden-link transmissions
  std::uint64_t dropped = 0;
  std::uint64_t in_flight = 0;
  std::uint64_t probes_sent = 0;
  std::uint64_t com_sent = 0;
  std::uint64_t com_received = 0;
  std::uint64_t announcements = 0;
  std::uint64_t blocked_verdicts = 0;
  std::uint64_t rule_evaluations = 0;
  std::uint64_t reload_count = 0;

  SimTime completion() const { return stop - start; }
  double completion_seconds() const { return completion().seconds(); }
  bool operator==(const TrialResult&) const = default;
};

class TrialTimeout : public std::runtime_error {
 public:
  TrialTimeout(SimTime cap, std::uint64_t received, std::uint64_t target)
      : std::runtime_error("trial did not reach " + std::to_string(target) +
                           " packets within " + format_seconds(cap) +
                           " s (received " + std::to_string(received) + ")"),
        cap(cap),
        received(received) {}
  SimTime cap;
  std::uint64_t received;
};

struct TraceRecord {
  SimTime time;
  std::string actor;
  std::string event;
  std::string detail;
};

using TraceSink = std::function<void(const TraceRecord&)>;

namespace kernel_detail {
struct CsNelCycle {};
struct CsSendProbe {
  Packet packet;
};
struct CsComSend {};
struct CrTimeout {
  std::uint64_t announcement;
};
struct DeliverNelToCr {
  NelMessage msg;
};
struct DeliverNelToCs {
  NelMessage msg;
};
struct DeliverWarden {
  Packet packet;
};
struct ReloadCheck {};

using Payload = std::variant<CsNelCycle, CsSendProbe, CsComSend, CrTimeout,
                             DeliverNelToCr, DeliverNelToCs, DeliverWarden,
                             ReloadCheck>;
}  // namespace kernel_detail

// One trial: CS and CR connected by a warden link and a direct NEL link.
class Trial {
 public:
  Trial(const TrialConfig& cfg, std::uint64_t seed, TraceSink trace = {})
      : cfg_(cfg),
        warden_(cfg.warden, stream_seed(seed, Stream::kWarden), cfg.rounding),
        cs_(stream_seed(seed, Stream::kSender), cfg.timing, cfg.strategy,
            cfg.probe_selection),
        cr_(cfg.target, cfg.timing),
        warden_link_(cfg.warden_link, stream_seed(seed, Stream::kLink)),
        nel_link_(cfg.nel_link, mix_seed(stream_seed(seed, Stream::kLink), 1)),
        trace_(std::move(trace)) {
    if (cfg.target < 1) throw std::invalid_argument("target must be >= 1");
  }

  TrialResult run() {
    using namespace kernel_detail;
    const SimTime cap = time_cap(cfg_);
    q_.schedule(SimTime{}, EventPriority::Timer, CsNelCycle{});
    if (cfg_.strategy == SenderStrategy::FixedSingleChannel) {
      com_active_ = true;
      q_.schedule(SimTime{}, EventPriority::Timer, CsComSend{});
    }
    schedule_reload_check();

    while (!cr_.done()) {
      if (q_.empty() || q_.peek_time() > cap) {
        throw TrialTimeout(cap, cr_.received(), cfg_.target);
      }
      auto ev = q_.pop();
      std::visit([&](auto& payload) { handle(payload, ev.time); }, ev.payload);
    }
    return result();
  }

  const WardenState& warden() const { return warden_; }
  const CovertSender& sender() const { return cs_; }
  const CovertReceiver& receiver() const { return cr_; }
  const LinkCounters& warden_link_counters() const { return warden_link_.counters(); }

 private:
  TrialResult result() const {
    TrialResult r;
    r.start = cr_.start_time().value_or(SimTime{});
    r.stop = cr_.stop_time().value_or(SimTime{});
    const auto& ctr = warden_.counters();
    r.normalized = ctr.normalized;
    r.forwarded = ctr.forwarded;
    r.rule_evaluations = ctr.rule_evaluations;
    const auto& link = warden_link_.counters();
    r.total_packets = link.sent;
    r.dropped = link.dropped;
    r.in_flight = link.sent - link.dropped - link.delivered;
    r.probes_sent = probes_transmitted_;
    r.com_sent = cs_.com_sent();
    r.com_received = cr_.received();
    r.announcements = cs_.announcements();
    r.blocked_verdicts = cr_.blocked_verdicts();
    r.reload_count = warden_.reload_count();
    return r;
  }

  void trace(SimTime t, const char* actor, const char* event, std::string detail) {
    if (trace_) trace_({t, actor, event, std::move(detail)});
  }

  void schedule_reload_check() {
    const SimTime next = warden_.next_reload();
    if (!next.is_infinite()) {
      q_.schedule(next, EventPriority::ReloadCheck, kernel_detail::ReloadCheck{});
    }
  }

  void send_nel(SimTime now, kernel_detail::Payload deliver) {
    if (auto at = nel_link_.transmit(now)) {
      q_.schedule(*at, EventPriority::NelLink, std::move(deliver));
    }
  }

  void send_warden(SimTime now, const Packet& p) {
    if (auto at = warden_link_.transmit(now)) {
      q_.schedule(*at, EventPriority::WardenLink, kernel_detail::DeliverWarden{p});
    }
  }

  void handle(const kernel_detail::CsNelCycle&, SimTime now) {
    auto cycle = cs_.start_nel_cycle(now);
    if (cycle.announce) {
      trace(now, "CS", "announce", "channel=" + std::to_string(cycle.announce->channel.index()));
      send_nel(now, kernel_detail::DeliverNelToCr{*cycle.announce});
      for (auto& probe : cycle.probes) {
        const SimTime at = probe.send_time();
        q_.schedule(at, EventPriority::Timer, kernel_detail::CsSendProbe{std::move(probe)});
      }
    }
    q_.schedule(cycle.next_cycle, EventPriority::Timer, kernel_detail::CsNelCycle{});
  }

  void handle(const kernel_detail::CsSendProbe& ev, SimTime now) {
    ++probes_transmitted_;
    send_warden(now, ev.packet);
  }

  void handle(const kernel_detail::CsComSend&, SimTime now) {
    auto p = cs_.com_tick(now);
    if (!p) {
      com_active_ = false;
      trace(now, "CS", "com_suspend", "");
      return;
    }
    if (cs_.burst_remaining() == cfg_.timing.com_burst - 1) {
      trace(now, "CS", "com_burst", "channel=" + std::to_string(cs_.burst_channel().index()));
    }
    last_com_send_ = now;
    send_warden(now, *p);
    q_.schedule(now + cfg_.timing.com_gap, EventPriority::Timer, kernel_detail::CsComSend{});
  }

  void handle(const kernel_detail::DeliverNelToCr& ev, SimTime now) {
    nel_link_.mark_delivered();
    const SimTime deadline = cr_.on_announce(ev.msg, now);
    q_.schedule(deadline, EventPriority::Timer, kernel_detail::CrTimeout{ev.msg.announcement});
  }

  void handle(const kernel_detail::DeliverNelToCs& ev, SimTime now) {
    nel_link_.mark_delivered();
    const bool opened = cs_.on_result(ev.msg);
    if (opened && !com_active_) {
      com_active_ = true;
      SimTime at = now;
      if (last_com_send_ && *last_com_send_ + cfg_.timing.com_gap > at) {
        at = *last_com_send_ + cfg_.timing.com_gap;
      }
      q_.schedule(at, EventPriority::Timer, kernel_detail::CsComSend{});
    }
  }

  void handle(const kernel_detail::DeliverWarden& ev, SimTime now) {
    warden_link_.mark_delivered();
    auto out = warden_.process(ev.packet, now);
    if (auto verdict = cr_.on_packet(out.packet, now)) {
      trace(now, "CR", "result", "channel=" + std::to_string(verdict->channel.index()) + ";blocked=0");
      send_nel(now, kernel_detail::DeliverNelToCs{*verdict});
    }
  }

  void handle(const kernel_detail::CrTimeout& ev, SimTime now) {
    if (auto verdict = cr_.on_timeout(ev.announcement)) {
      trace(now, "CR", "result", "channel=" + std::to_string(verdict->channel.index()) + ";blocked=1");
      send_nel(now, kernel_detail::DeliverNelToCs{*verdict});
    }
  }

  void handle(const kernel_detail::ReloadCheck&, SimTime now) {
    const auto before = warden_.reload_count();
    warden_.maybe_reload(now);
    if (warden_.reload_count() != before && trace_) {
      const auto& h = warden_.reload_history().back();
      trace(now, "warden", "reload",
            "size=" + std::to_string(h.size) + ";interval=" + format_seconds(h.interval));
    }
    schedule_reload_check();
  }

  TrialConfig cfg_;
  EventQueue<kernel_detail::Payload> q_;
  WardenState warden_;
  CovertSender cs_;
  CovertReceiver cr_;
  Link warden_link_;
  Link nel_link_;
  TraceSink trace_;
  bool com_active_ = false;
  std::uint64_t probes_transmitted_ = 0;
  std::optional<SimTime> last_com_send_;
};

inline TrialResult run_trial(const TrialConfig& cfg, std::uint64_t seed,
                             TraceSink trace = {}) {
  return Trial(cfg, seed, std::move(trace)).run();
}

inline std::string trace_csv_header() { return "time,actor,event,detail\n"; }

inline std::string to_csv_line(const TraceRecord& r) {
  return format_seconds(r.time) + "," + r.actor + "," + r.event + "," + r.detail + "\n";
}

}  // namespace dynwarden
