#pragma once

#include <atomic>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "random.hpp"
#include "simkernel.hpp"
#include "warden.hpp"

namespace dynwarden {

struct ScenarioConfig {
  std::string name = "scenario";  // also keys the seed derivation
  TrialConfig trial;
  std::uint64_t trials = 20;
  std::uint64_t root_seed = 1;
  std::vector<double> fr_sweep;
  unsigned jobs = 1;
};

// Seed of trial i in scenario `name`. Keyed by name so adding or reordering
// scenarios never changes another scenario's draws.
inline std::uint64_t trial_seed(std::uint64_t root_seed, std::string_view name,
                                std::uint64_t i) {
  return mix_seed(mix_seed(root_seed, fnv1a(name)), i);
}

struct Stat {
  double mean = 0.0;
  double std = 0.0;  // population
};

inline Stat summarize(const std::vector<double>& xs) {
  Stat s;
  if (xs.empty()) return s;
  double sum = 0.0;
  for (double x : xs) sum += x;
  s.mean = sum / static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - s.mean) * (x - s.mean);
  s.std = std::sqrt(ss / static_cast<double>(xs.size()));
  return s;
}

struct Aggregate {
  std::uint64_t n = 0;  // completed trials
  std::uint64_t timeouts = 0;
  Stat time;
  Stat normalized;
  Stat forwarded;
  Stat total;
  Stat rule_evaluations;
  Stat reloads;
};

struct ScenarioResult {
  std::string name;
  std::uint64_t target = 0;
  WardenKind warden;
  std::uint64_t trials = 0;
  Aggregate aggregate;
  std::vector<std::optional<TrialResult>> per_trial;  // index order
  std::vector<std::string> timeout_messages;
};

inline Aggregate aggregate(const std::vector<std::optional<TrialResult>>& runs) {
  Aggregate a;
  std::vector<double> time, norm, fwd, total, evals, reloads;
  for (const auto& r : runs) {
    if (!r) {
      ++a.timeouts;
      continue;
    }
    ++a.n;
    time.push_back(r->completion_seconds());
    norm.push_back(static_cast<double>(r->normalized));
    fwd.push_back(static_cast<double>(r->forwarded));
    total.push_back(static_cast<double>(r->total_packets));
    evals.push_back(static_cast<double>(r->rule_evaluations));
    reloads.push_back(static_cast<double>(r->reload_count));
  }
  a.time = summarize(time);
  a.normalized = summarize(norm);
  a.forwarded = summarize(fwd);
  a.total = summarize(total);
  a.rule_evaluations = summarize(evals);
  a.reloads = summarize(reloads);
  return a;
}

// Trials may run on several threads; results land in index order and the
// fold runs afterwards, so the output does not depend on `jobs`.
inline ScenarioResult run_scenario(const ScenarioConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (cfg.trial.target < 1) throw std::invalid_argument("target must be >= 1");
  validate(cfg.trial.warden);

  ScenarioResult out;
  out.name = cfg.name;
  out.target = cfg.trial.target;
  out.warden = cfg.trial.warden;
  out.trials = cfg.trials;
  out.per_trial.resize(cfg.trials);
  std::vector<std::string> errors(cfg.trials);

  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (auto i = next++; i < cfg.trials; i = next++) {
      try {
        out.per_trial[i] = run_trial(cfg.trial, trial_seed(cfg.root_seed, cfg.name, i));
      } catch (const TrialTimeout& e) {
        errors[i] = "trial " + std::to_string(i) + ": " + e.what();
      }
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(cfg.jobs, cfg.trials));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (!e.empty()) out.timeout_messages.push_back(std::move(e));
  out.aggregate = aggregate(out.per_trial);
  return out;
}

inline std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 6);
  return std::string(buf, res.ptr);
}

inline std::string format_fraction(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// f_R and R_D columns for a warden kind.
inline std::pair<std::string, std::string> warden_columns(const WardenKind& k) {
  return std::visit(
      [](const auto& w) -> std::pair<std::string, std::string> {
        using T = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<T, NoWarden>) {
          return {"", "0"};
        } else if constexpr (std::is_same_v<T, RegularWarden>) {
          return {"", format_fraction(w.rr_fraction)};
        } else if constexpr (std::is_same_v<T, DynamicWarden>) {
          return {format_fraction(w.reload_interval), format_fraction(w.rd_fraction)};
        } else {
          return {format_fraction(w.reload_interval.lo) + "-" +
                      format_fraction(w.reload_interval.hi),
                  format_fraction(w.rd_fraction.lo) + "-" +
                      format_fraction(w.rd_fraction.hi)};
        }
      },
      k);
}

// One line of the aggregate CSV.
struct AggregateRow {
  std::string scenario;
  std::string f_r;
  std::string r_d;
  std::uint64_t target = 0;
  std::uint64_t trials = 0;
  std::uint64_t timeouts = 0;
  double time_mean = 0, time_std = 0;
  double normalized_mean = 0, normalized_std = 0;
  double forwarded_mean = 0, forwarded_std = 0;
  double total_mean = 0, total_std = 0;
  double rule_evals_mean = 0;
  double reloads_mean = 0;
};

inline AggregateRow to_row(const ScenarioResult& r) {
  AggregateRow row;
  row.scenario = r.name;
  std::tie(row.f_r, row.r_d) = warden_columns(r.warden);
  row.target = r.target;
  row.trials = r.trials;
  row.timeouts = r.aggregate.timeouts;
  const auto& a = r.aggregate;
  row.time_mean = a.time.mean;
  row.time_std = a.time.std;
  row.normalized_mean = a.normalized.mean;
  row.normalized_std = a.normalized.std;
  row.forwarded_mean = a.forwarded.mean;
  row.forwarded_std = a.forwarded.std;
  row.total_mean = a.total.mean;
  row.total_std = a.total.std;
  row.rule_evals_mean = a.rule_evaluations.mean;
  row.reloads_mean = a.reloads.mean;
  return row;
}

inline constexpr std::string_view kAggregateHeader =
    "scenario,f_R,R_D,target,trials,timeouts,time_mean,time_std,normalized_mean,"
    "normalized_std,forwarded_mean,forwarded_std,total_mean,total_std,"
    "rule_evals_mean,reloads_mean";

inline std::string to_csv(const std::vector<AggregateRow>& rows) {
  std::string out(kAggregateHeader);
  out += "\n";
  for (const auto& r : rows) {
    out += r.scenario + "," + r.f_r + "," + r.r_d + "," + std::to_string(r.target) +
           "," + std::to_string(r.trials) + "," + std::to_string(r.timeouts);
    for (double v : {r.time_mean, r.time_std, r.normalized_mean, r.normalized_std,
                     r.forwarded_mean, r.forwarded_std, r.total_mean, r.total_std,
                     r.rule_evals_mean, r.reloads_mean}) {
      out += "," + format_number(v);
    }
    out += "\n";
  }
  return out;
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.emplace_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline double parse_double(std::string_view s, std::string_view what) {
  double v = 0.0;
  const auto t = trim(s);
  auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (res.ec != std::errc{} || res.ptr != t.data() + t.size()) {
    throw std::invalid_argument("bad number for " + std::string(what) + ": '" + t + "'");
  }
  return v;
}

inline std::uint64_t parse_uint(std::string_view s, std::string_view what) {
  std::uint64_t v = 0;
  const auto t = trim(s);
  auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (res.ec != std::errc{} || res.ptr != t.data() + t.size()) {
    throw std::invalid_argument("bad integer for " + std::string(what) + ": '" + t + "'");
  }
  return v;
}

inline std::vector<AggregateRow> parse_csv(std::string_view text) {
  std::vector<AggregateRow> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || trim(line) != kAggregateHeader) {
    throw std::invalid_argument("aggregate CSV: unexpected header");
  }
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 16) throw std::invalid_argument("aggregate CSV: bad column count");
    AggregateRow r;
    r.scenario = f[0];
    r.f_r = f[1];
    r.r_d = f[2];
    r.target = parse_uint(f[3], "target");
    r.trials = parse_uint(f[4], "trials");
    r.timeouts = parse_uint(f[5], "timeouts");
    double* dst[] = {&r.time_mean, &r.time_std, &r.normalized_mean, &r.normalized_std,
                     &r.forwarded_mean, &r.forwarded_std, &r.total_mean, &r.total_std,
                     &r.rule_evals_mean, &r.reloads_mean};
    for (std::size_t i = 0; i < 10; ++i) *dst[i] = parse_double(f[6 + i], "metric");
    rows.push_back(std::move(r));
  }
  return rows;
}

inline void write_file(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << content;
  out.flush();
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

inline void emit_csv(const std::vector<AggregateRow>& rows,
                     const std::filesystem::path& path) {
  if (rows.empty()) throw std::invalid_argument("emit_csv: no rows for " + path.string());
  write_file(path, to_csv(rows));
}

inline std::vector<AggregateRow> to_rows(const std::vector<ScenarioResult>& results) {
  std::vector<AggregateRow> rows;
  for (const auto& r : results) rows.push_back(to_row(r));
  return rows;
}

inline const std::vector<double>& default_fr_sweep() {
  static const std::vector<double> sweep{1, 2, 3, 4, 5, 10, 15, 20, 25, 30, 35};
  return sweep;
}

inline std::string fr_label(double fr) { return "fr=" + format_fraction(fr); }

// One scenario per f_R value; each row's seeds depend only on
// (base name, f_R, trial index).
inline std::vector<ScenarioResult> sweep_fr(const DynamicWarden& tmpl,
                                            const std::vector<double>& values,
                                            const ScenarioConfig& base) {
  std::vector<ScenarioResult> rows;
  for (double fr : values) {
    ScenarioConfig cfg = base;
    DynamicWarden w = tmpl;
    w.reload_interval = fr;
    cfg.trial.warden = w;
    cfg.name = base.name + "/" + fr_label(fr);
    rows.push_back(run_scenario(cfg));
  }
  return rows;
}

// V1-V4 x targets {400, 200, 100}.
inline std::vector<ScenarioResult> run_table1(const ScenarioConfig& base) {
  std::vector<ScenarioResult> rows;
  for (auto v : {RandomVariant::V1, RandomVariant::V2, RandomVariant::V3,
                 RandomVariant::V4}) {
    for (std::uint64_t target : {400u, 200u, 100u}) {
      ScenarioConfig cfg = base;
      cfg.trial.warden = random_variant(v);
      cfg.trial.target = target;
      cfg.name = std::string(to_string(v)) + "/" + std::to_string(target);
      rows.push_back(run_scenario(cfg));
    }
  }
  return rows;
}

// Narrow per-figure table: scenario,f_R,R_D,target,<metric>_mean,<metric>_std.
inline std::string figure_csv(const std::vector<ScenarioResult>& results,
                              std::string_view metric,
                              Stat Aggregate::*field) {
  std::string out = "scenario,f_R,R_D,target," + std::string(metric) + "_mean," +
                    std::string(metric) + "_std\n";
  for (const auto& r : results) {
    const auto [fr, rd] = warden_columns(r.warden);
    const Stat& s = r.aggregate.*field;
    out += r.name + "," + fr + "," + rd + "," + std::to_string(r.target) + "," +
           format_number(s.mean) + "," + format_number(s.std) + "\n";
  }
  return out;
}

inline std::string cost_figure_csv(const std::vector<ScenarioResult>& results) {
  std::string out = "scenario,f_R,R_D,target,rule_evals_mean,rule_evals_std,reloads_mean,reloads_std\n";
  for (const auto& r : results) {
    const auto [fr, rd] = warden_columns(r.warden);
    const auto& a = r.aggregate;
    out += r.name + "," + fr + "," + rd + "," + std::to_string(r.target) + "," +
           format_number(a.rule_evaluations.mean) + "," + format_number(a.rule_evaluations.std) +
           "," + format_number(a.reloads.mean) + "," + format_number(a.reloads.std) + "\n";
  }
  return out;
}

// Writes fig4.csv .. fig12.csv and table1.csv into `dir`.
//   fig4-7: time / normalized / forwarded / total vs f_R, target 400,
//           none + regular + dynamic R_D in {0.2, 0.3, 0.4}
//   fig8:   cost proxies for the same scenarios
//   fig9-12: the four metrics vs f_R at R_D = 0.4, targets {100, 200, 400}
inline void write_figures(const std::filesystem::path& dir, const ScenarioConfig& base) {
  std::vector<ScenarioResult> effect;
  {
    ScenarioConfig none = base;
    none.name = "none";
    none.trial.warden = NoWarden{};
    none.trial.target = 400;
    effect.push_back(run_scenario(none));
    ScenarioConfig reg = base;
    reg.name = "regular";
    reg.trial.warden = RegularWarden{0.95};
    reg.trial.target = 400;
    effect.push_back(run_scenario(reg));
    for (double rd : {0.2, 0.3, 0.4}) {
      ScenarioConfig dyn = base;
      dyn.trial.target = 400;
      dyn.name = "dynamic/rd=" + format_fraction(rd);
      auto rows = sweep_fr(DynamicWarden{rd, 2.0}, default_fr_sweep(), dyn);
      effect.insert(effect.end(), rows.begin(), rows.end());
    }
  }
  write_file(dir / "fig4.csv", figure_csv(effect, "time", &Aggregate::time));
  write_file(dir / "fig5.csv", figure_csv(effect, "normalized", &Aggregate::normalized));
  write_file(dir / "fig6.csv", figure_csv(effect, "forwarded", &Aggregate::forwarded));
  write_file(dir / "fig7.csv", figure_csv(effect, "total", &Aggregate::total));
  write_file(dir / "fig8.csv", cost_figure_csv(effect));

  std::vector<ScenarioResult> length;
  for (std::uint64_t target : {100u, 200u, 400u}) {
    ScenarioConfig cfg = base;
    cfg.trial.target = target;
    cfg.name = "dynamic/rd=0.4/target=" + std::to_string(target);
    auto rows = sweep_fr(DynamicWarden{0.4, 2.0}, default_fr_sweep(), cfg);
    length.insert(length.end(), rows.begin(), rows.end());
  }
  write_file(dir / "fig9.csv", figure_csv(length, "time", &Aggregate::time));
  write_file(dir / "fig10.csv", figure_csv(length, "normalized", &Aggregate::normalized));
  write_file(dir / "fig11.csv", figure_csv(length, "forwarded", &Aggregate::forwarded));
  write_file(dir / "fig12.csv", figure_csv(length, "total", &Aggregate::total));

  emit_csv(to_rows(run_table1(base)), dir / "table1.csv");
}

// --- scenario files -------------------------------------------------------
//
// Flat `key = value` lines, '#' starts a comment. Keys:
//   name, warden (none|regular|dynamic|random), rr, rd, fr, fr_range (lo,hi),
//   rd_range (lo,hi), variant (V1..V4), target, trials, seed, jobs,
//   strategy (adaptive|fixed), probe_selection (sweep|skip_nonblocked),
//   com_gap, probe_spacing, probe_burst, com_burst, cr_timeout, nel_pause,
//   warden_latency, nel_latency, warden_loss, nel_loss, rounding
//   (half_up|floor|ceil), timeout_factor, fr_sweep (comma list)

inline std::vector<double> parse_double_list(std::string_view s, std::string_view what) {
  std::vector<double> out;
  for (const auto& part : split(s, ',')) {
    if (!trim(part).empty()) out.push_back(parse_double(part, what));
  }
  if (out.empty()) throw std::invalid_argument(std::string(what) + ": empty list");
  return out;
}

inline Range parse_range(std::string_view s, std::string_view what) {
  const auto v = parse_double_list(s, what);
  if (v.size() != 2) throw std::invalid_argument(std::string(what) + ": expected lo,hi");
  return {v[0], v[1]};
}

inline RandomVariant parse_variant(std::string_view s) {
  const auto t = trim(s);
  if (t == "V1" || t == "v1") return RandomVariant::V1;
  if (t == "V2" || t == "v2") return RandomVariant::V2;
  if (t == "V3" || t == "v3") return RandomVariant::V3;
  if (t == "V4" || t == "v4") return RandomVariant::V4;
  throw std::invalid_argument("unknown variant '" + t + "'");
}

inline ScenarioConfig parse_scenario(std::string_view text) {
  std::map<std::string, std::string> kv;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("scenario line " + std::to_string(lineno) + ": missing '='");
    }
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }

  ScenarioConfig cfg;
  auto take = [&](const char* key) -> std::optional<std::string> {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  auto secs = [&](const char* key, SimTime& dst) {
    if (auto v = take(key)) dst = SimTime::from_seconds(parse_double(*v, key));
  };

  if (auto v = take("name")) cfg.name = *v;
  const std::string warden = take("warden").value_or("none");
  const auto rr = take("rr");
  const auto rd = take("rd");
  const auto fr = take("fr");
  const auto fr_range = take("fr_range");
  const auto rd_range = take("rd_range");
  const auto variant = take("variant");
  if (warden == "none") {
    cfg.trial.warden = NoWarden{};
  } else if (warden == "regular") {
    cfg.trial.warden = RegularWarden{rr ? parse_double(*rr, "rr") : 0.95};
  } else if (warden == "dynamic") {
    cfg.trial.warden = DynamicWarden{rd ? parse_double(*rd, "rd") : 0.4,
                                     fr ? parse_double(*fr, "fr") : 2.0};
  } else if (warden == "random") {
    RandomDynamicWarden w = variant ? random_variant(parse_variant(*variant))
                                    : RandomDynamicWarden{};
    if (fr_range) w.reload_interval = parse_range(*fr_range, "fr_range");
    if (rd_range) w.rd_fraction = parse_range(*rd_range, "rd_range");
    cfg.trial.warden = w;
  } else {
    throw std::invalid_argument("unknown warden '" + warden + "'");
  }
  if (auto v = take("target")) cfg.trial.target = parse_uint(*v, "target");
  if (auto v = take("trials")) cfg.trials = parse_uint(*v, "trials");
  if (auto v = take("seed")) cfg.root_seed = parse_uint(*v, "seed");
  if (auto v = take("jobs")) cfg.jobs = static_cast<unsigned>(parse_uint(*v, "jobs"));
  if (auto v = take("strategy")) {
    if (*v == "adaptive") cfg.trial.strategy = SenderStrategy::AdaptiveSwitching;
    else if (*v == "fixed") cfg.trial.strategy = SenderStrategy::FixedSingleChannel;
    else throw std::invalid_argument("unknown strategy '" + *v + "'");
  }
  if (auto v = take("probe_selection")) {
    if (*v == "sweep") cfg.trial.probe_selection = ProbeSelection::Sweep;
    else if (*v == "skip_nonblocked") cfg.trial.probe_selection = ProbeSelection::SkipNonBlocked;
    else throw std::invalid_argument("unknown probe_selection '" + *v + "'");
  }
  secs("com_gap", cfg.trial.timing.com_gap);
  secs("probe_spacing", cfg.trial.timing.probe_spacing);
  secs("cr_timeout", cfg.trial.timing.cr_timeout);
  secs("nel_pause", cfg.trial.timing.nel_pause);
  secs("warden_latency", cfg.trial.warden_link.latency);
  secs("nel_latency", cfg.trial.nel_link.latency);
  if (auto v = take("probe_burst"))
    cfg.trial.timing.probe_burst = static_cast<int>(parse_uint(*v, "probe_burst"));
  if (auto v = take("com_burst"))
    cfg.trial.timing.com_burst = static_cast<int>(parse_uint(*v, "com_burst"));
  if (auto v = take("warden_loss")) cfg.trial.warden_link.loss_prob = parse_double(*v, "warden_loss");
  if (auto v = take("nel_loss")) cfg.trial.nel_link.loss_prob = parse_double(*v, "nel_loss");
  if (auto v = take("rounding")) {
    if (*v == "half_up") cfg.trial.rounding = Rounding::HalfUp;
    else if (*v == "floor") cfg.trial.rounding = Rounding::Floor;
    else if (*v == "ceil") cfg.trial.rounding = Rounding::Ceil;
    else throw std::invalid_argument("unknown rounding '" + *v + "'");
  }
  if (auto v = take("timeout_factor")) cfg.trial.timeout_factor = parse_double(*v, "timeout_factor");
  if (auto v = take("fr_sweep")) cfg.fr_sweep = parse_double_list(*v, "fr_sweep");

  if (!kv.empty()) throw std::invalid_argument("unknown scenario key '" + kv.begin()->first + "'");
  validate(cfg.trial.warden);
  if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (cfg.trial.target < 1) throw std::invalid_argument("target must be >= 1");
  if (cfg.trial.timing.probe_burst < 1 || cfg.trial.timing.com_burst < 1)
    throw std::invalid_argument("burst sizes must be >= 1");
  return cfg;
}

inline ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read scenario file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

// --- single-trial CSV -----------------------------------------------------

inline constexpr std::string_view kTrialHeader =
    "seed,completion_time,start,stop,normalized,forwarded,total,dropped,probes_sent,"
    "com_sent,com_received,announcements,blocked_verdicts,rule_evaluations,reload_count";

inline std::string trial_csv_row(std::uint64_t seed, const TrialResult& r) {
  return std::to_string(seed) + "," + format_seconds(r.completion()) + "," +
         format_seconds(r.start) + "," + format_seconds(r.stop) + "," +
         std::to_string(r.normalized) + "," + std::to_string(r.forwarded) + "," +
         std::to_string(r.total_packets) + "," + std::to_string(r.dropped) + "," +
         std::to_string(r.probes_sent) + "," + std::to_string(r.com_sent) + "," +
         std::to_string(r.com_received) + "," + std::to_string(r.announcements) + "," +
         std::to_string(r.blocked_verdicts) + "," + std::to_string(r.rule_evaluations) +
         "," + std::to_string(r.reload_count);
}

}  // namespace dynwarden
