#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "experiments.hpp"

namespace dynwarden::acceptance {

struct Options {
  std::uint64_t root_seed = 1;
  std::uint64_t trials = 20;
  unsigned jobs = 1;
};

struct Outcome {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string measured;
};

// Thresholds, fixed here and nowhere else.
inline constexpr double kRegularMaxInflation = 0.05;
inline constexpr double kDynamicMinTimeRatio = 1.15;
inline constexpr double kMaxSpearman = -0.5;
inline constexpr double kMinTotalRatio = 1.2;
inline constexpr double kLengthRatioLo = 3.5;
inline constexpr double kLengthRatioHi = 4.5;
inline constexpr double kFixedChannelRelTol = 0.10;
inline constexpr double kInclusionTol = 0.02;
inline constexpr std::uint64_t kInclusionReloads = 10'000;

// Spearman rank correlation with average ranks for ties.
inline double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  auto ranks = [](const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < idx.size();) {
      std::size_t j = i;
      while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
      const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
      for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
      i = j + 1;
    }
    return r;
  };
  const auto rx = ranks(x);
  const auto ry = ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0 || syy == 0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

inline std::string fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// Runs scenarios on demand and memoizes them by name, so criteria that share
// a scenario see the same trials.
class ScenarioCache {
 public:
  explicit ScenarioCache(Options opt) : opt_(opt) {}

  const ScenarioResult& get(const std::string& name, const WardenKind& warden,
                            std::uint64_t target = 400,
                            SenderStrategy strategy = SenderStrategy::AdaptiveSwitching) {
    auto it = cache_.find(name);
    if (it != cache_.end()) return it->second;
    ScenarioConfig cfg;
    cfg.name = name;
    cfg.trials = opt_.trials;
    cfg.root_seed = opt_.root_seed;
    cfg.jobs = opt_.jobs;
    cfg.trial.warden = warden;
    cfg.trial.target = target;
    cfg.trial.strategy = strategy;
    return cache_.emplace(name, run_scenario(cfg)).first->second;
  }

  const ScenarioResult& none(std::uint64_t target = 400) {
    return get("none/target=" + std::to_string(target), NoWarden{}, target);
  }
  const ScenarioResult& regular(std::uint64_t target = 400) {
    return get("regular/rr=0.95/target=" + std::to_string(target), RegularWarden{0.95}, target);
  }
  const ScenarioResult& dynamic(double rd, double fr, std::uint64_t target = 400) {
    return get("dynamic/rd=" + format_fraction(rd) + "/fr=" + format_fraction(fr) +
                   "/target=" + std::to_string(target),
               DynamicWarden{rd, fr}, target);
  }
  const ScenarioResult& variant(RandomVariant v, std::uint64_t target = 400) {
    return get(std::string(to_string(v)) + "/target=" + std::to_string(target),
               random_variant(v), target);
  }

  const Options& options() const { return opt_; }

 private:
  Options opt_;
  std::map<std::string, ScenarioResult> cache_;
};

inline bool all_completed(const ScenarioResult& r) { return r.aggregate.timeouts == 0; }

inline Outcome regular_near_transparency(ScenarioCache& c) {
  const auto& none = c.none();
  const auto& reg = c.regular();
  const double inflation = reg.aggregate.time.mean / none.aggregate.time.mean - 1.0;
  return {1, "regular warden near-transparency (inflation <= 5%)",
          all_completed(none) && all_completed(reg) && inflation <= kRegularMaxInflation,
          "inflation=" + fmt(inflation * 100, 2) + "% (none " +
              fmt(none.aggregate.time.mean, 1) + " s, regular " +
              fmt(reg.aggregate.time.mean, 1) + " s)"};
}

inline Outcome dynamic_effectiveness(ScenarioCache& c) {
  const auto& reg = c.regular();
  const auto& dyn = c.dynamic(0.4, 2);
  const double ratio = dyn.aggregate.time.mean / reg.aggregate.time.mean;
  return {2, "dynamic{0.4,2} time >= 1.15x regular{0.95}",
          all_completed(dyn) && ratio >= kDynamicMinTimeRatio,
          "ratio=" + fmt(ratio)};
}

inline Outcome reload_interval_trend(ScenarioCache& c) {
  const std::vector<double> frs{1, 2, 5, 10, 20, 35};
  std::vector<double> times;
  std::string detail;
  for (double fr : frs) {
    const auto& r = c.dynamic(0.4, fr);
    times.push_back(r.aggregate.time.mean);
    detail += " " + format_fraction(fr) + ":" + fmt(r.aggregate.time.mean, 1);
  }
  const double rho = spearman(frs, times);
  return {3, "Spearman(f_R, time) <= -0.5 at R_D=0.4", rho <= kMaxSpearman,
          "rho=" + fmt(rho) + " |" + detail};
}

inline Outcome traffic_inflation(ScenarioCache& c) {
  const auto& reg = c.regular();
  const auto& dyn = c.dynamic(0.4, 2);
  const double ratio = dyn.aggregate.total.mean / reg.aggregate.total.mean;
  return {4, "total packets dynamic{0.4,2} >= 1.2x regular{0.95}",
          ratio >= kMinTotalRatio,
          "ratio=" + fmt(ratio) + " (regular " + fmt(reg.aggregate.total.mean, 1) +
              ", dynamic " + fmt(dyn.aggregate.total.mean, 1) + ")"};
}

inline Outcome normalized_ordering(ScenarioCache& c) {
  const double d2 = c.dynamic(0.2, 2).aggregate.normalized.mean;
  const double d3 = c.dynamic(0.3, 2).aggregate.normalized.mean;
  const double d4 = c.dynamic(0.4, 2).aggregate.normalized.mean;
  const double reg = c.regular().aggregate.normalized.mean;
  return {5, "normalized: dyn0.2 < dyn0.3 < dyn0.4 < regular",
          d2 < d3 && d3 < d4 && d4 < reg,
          fmt(d2, 1) + " < " + fmt(d3, 1) + " < " + fmt(d4, 1) + " < " + fmt(reg, 1)};
}

inline Outcome length_linearity(ScenarioCache& c) {
  const double t400 = c.dynamic(0.4, 2, 400).aggregate.time.mean;
  const double t100 = c.dynamic(0.4, 2, 100).aggregate.time.mean;
  const double ratio = t400 / t100;
  return {6, "time(400)/time(100) in [3.5, 4.5] for dynamic{0.4,2}",
          ratio >= kLengthRatioLo && ratio <= kLengthRatioHi, "ratio=" + fmt(ratio)};
}

inline Outcome fixed_channel_oracle(ScenarioCache& c) {
  const auto& none = c.none();
  const auto& fixed = c.get("fixed/dynamic/rd=0.4/fr=2/target=400", DynamicWarden{0.4, 2}, 400,
                            SenderStrategy::FixedSingleChannel);
  const double expected = 1.0 / (1.0 - 20.0 / 50.0);
  const double mult = fixed.aggregate.time.mean / none.aggregate.time.mean;
  const double rel = std::abs(mult - expected) / expected;
  return {7, "fixed-channel multiplier vs none = 1.667 +-10%",
          all_completed(fixed) && rel <= kFixedChannelRelTol,
          "multiplier=" + fmt(mult) + " expected=" + fmt(expected) +
              " rel_err=" + fmt(rel * 100, 2) + "%"};
}

inline Outcome random_variant_ordering(ScenarioCache& c) {
  const double v2 = c.variant(RandomVariant::V2).aggregate.time.mean;
  const double v3 = c.variant(RandomVariant::V3).aggregate.time.mean;
  const double v4 = c.variant(RandomVariant::V4).aggregate.time.mean;
  return {8, "random variants: V3 >= V2 and V3 >= V4 (target 400)", v3 >= v2 && v3 >= v4,
          "V2=" + fmt(v2, 1) + " V3=" + fmt(v3, 1) + " V4=" + fmt(v4, 1)};
}

// Exhaustive and deterministic checks; each returns an empty string on
// success or a description of the first violation.
namespace props {

inline std::string bijection_identity() {
  std::vector<bool> seen(kRuleCount, false);
  for (const auto& ch : catalog()) {
    const auto r = rule_for_channel(ch.id());
    if (seen[r.index()]) return "rule " + std::to_string(r.index()) + " hit twice";
    seen[r.index()] = true;
    const Packet carrier = encode(ch, default_packet(PacketKind::COM, 0), 1);
    for (std::size_t j = 0; j < kRuleCount; ++j) {
      const bool m = rule(RuleId(j)).matches(carrier);
      if (m != (j == r.index())) {
        return "matrix[" + std::to_string(j) + "][" + std::to_string(ch.index) + "]=" +
               (m ? "1" : "0");
      }
    }
  }
  return {};
}

inline std::string decode_after_normalize() {
  const RuleSet all = RuleSet::all();
  for (const auto& ch : catalog()) {
    DispositionCounters ctr;
    const auto out = apply_ruleset(all, encode(ch, default_packet(PacketKind::COM, 0), 1), ctr);
    if (decode(ch, out.packet) != 0 || out.disposition != Disposition::NORMALIZED) {
      return "channel " + std::to_string(ch.index) + " survived normalization";
    }
  }
  return {};
}

inline std::string cardinalities() {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    if (auto n = WardenState(RegularWarden{0.95}, seed).active().size(); n != 48)
      return "regular size " + std::to_string(n);
    for (auto [rd, want] : {std::pair{0.4, 20u}, {0.3, 15u}, {0.2, 10u}}) {
      WardenState w(DynamicWarden{rd, 2.0}, seed);
      for (int k = 0; k < 20; ++k) {
        w.maybe_reload(seconds(2.0 * k));
        if (w.active().size() != want) return "dynamic size " + std::to_string(w.active().size());
      }
    }
  }
  return {};
}

// The active set seen by packets is identical everywhere inside
// [k f_R, (k+1) f_R) and each reload happens exactly on a boundary.
inline std::string interval_constancy() {
  for (double fr : {1.0, 2.0, 3.5}) {
    WardenState w(DynamicWarden{0.4, fr}, 17);
    const SimTime interval = seconds(fr);
    const SimTime step = seconds(0.01);
    std::int64_t current = 0;
    RuleSet seen = w.active();
    for (SimTime t{}; t < seconds(60); t += step) {
      w.process(default_packet(PacketKind::LEGIT, 0), t);
      const std::int64_t k = t.ticks() / interval.ticks();
      if (k != current) {
        current = k;
        seen = w.active();
        if (w.reload_count() != static_cast<std::uint64_t>(k)) return "reload count drift";
      } else if (!(w.active() == seen)) {
        return "active set changed inside interval at t=" + format_seconds(t);
      }
    }
  }
  return {};
}

inline std::string inclusion_frequency(double* worst = nullptr) {
  WardenState w(DynamicWarden{0.4, 1.0}, 20190801);
  std::vector<std::uint64_t> hits(kRuleCount, 0);
  for (std::uint64_t k = 1; k <= kInclusionReloads; ++k) {
    w.maybe_reload(SimTime::from_seconds(static_cast<double>(k)));
    for (const auto& r : w.active().members()) ++hits[r.index()];
  }
  double max_dev = 0.0;
  for (auto h : hits) {
    const double f = static_cast<double>(h) / static_cast<double>(kInclusionReloads);
    max_dev = std::max(max_dev, std::abs(f - 0.4));
  }
  if (worst) *worst = max_dev;
  if (max_dev > kInclusionTol) return "max |freq-0.4| = " + fmt(max_dev);
  return {};
}

inline std::string repeatable_trials() {
  TrialConfig cfg;
  cfg.warden = DynamicWarden{0.4, 2.0};
  cfg.target = 100;
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    if (!(run_trial(cfg, seed) == run_trial(cfg, seed))) return "seed " + std::to_string(seed);
  }
  return {};
}

}  // namespace props

inline Outcome property_suite() {
  std::string failures;
  double worst = 0.0;
  const std::pair<const char*, std::function<std::string()>> checks[] = {
      {"bijection", props::bijection_identity},
      {"normalize", props::decode_after_normalize},
      {"cardinality", props::cardinalities},
      {"constancy", props::interval_constancy},
      {"inclusion", [&] { return props::inclusion_frequency(&worst); }},
      {"determinism", props::repeatable_trials},
  };
  for (const auto& [label, fn] : checks) {
    if (auto err = fn(); !err.empty()) failures += std::string(" ") + label + ": " + err + ";";
  }
  return {9, "property suite (bijection, normalization, cardinality, constancy, "
             "inclusion, determinism)",
          failures.empty(),
          failures.empty() ? "all exact; max inclusion deviation=" + fmt(worst) : failures};
}

inline Outcome cost_proxies(ScenarioCache& c) {
  bool ok = true;
  double worst = 0.0;
  for (double fr : {2.0, 10.0}) {
    for (const auto& r : c.dynamic(0.4, fr).per_trial) {
      if (!r) continue;
      const double expected = r->stop.seconds() / fr;
      const double dev = std::abs(static_cast<double>(r->reload_count) - expected);
      worst = std::max(worst, dev);
      if (dev > 1.0) ok = false;
    }
  }
  // Per-packet rule evaluations: exactly |active| per processed packet.
  bool exact = true;
  const auto per_packet = [&](const ScenarioResult& s, std::uint64_t want) {
    for (const auto& r : s.per_trial) {
      if (!r) continue;
      if (r->rule_evaluations != want * (r->normalized + r->forwarded)) exact = false;
    }
  };
  per_packet(c.dynamic(0.4, 2), 20);
  per_packet(c.regular(), 48);
  return {10, "cost proxies: reloads = duration/f_R +-1; evals/packet ratio = 20/48",
          ok && exact,
          "max |reloads - duration/f_R|=" + fmt(worst, 3) +
              "; per-packet evals 20 vs 48 " + (exact ? "exact" : "MISMATCH")};
}

inline std::vector<Outcome> run_primary(const Options& opt,
                                        const std::function<void(const Outcome&)>& on_result = {}) {
  ScenarioCache cache(opt);
  std::vector<std::function<Outcome()>> criteria{
      [&] { return regular_near_transparency(cache); },
      [&] { return dynamic_effectiveness(cache); },
      [&] { return reload_interval_trend(cache); },
      [&] { return traffic_inflation(cache); },
      [&] { return normalized_ordering(cache); },
      [&] { return length_linearity(cache); },
      [&] { return fixed_channel_oracle(cache); },
      [&] { return random_variant_ordering(cache); },
      [] { return property_suite(); },
      [&] { return cost_proxies(cache); },
  };
  std::vector<Outcome> out;
  for (auto& run : criteria) {
    out.push_back(run());
    if (on_result) on_result(out.back());
  }
  return out;
}

inline std::string format_line(const Outcome& o) {
  return std::string(o.pass ? "PASS" : "FAIL") + "  [" + std::to_string(o.id) + "] " + o.name +
         " :: " + o.measured;
}

}  // namespace dynwarden::acceptance
