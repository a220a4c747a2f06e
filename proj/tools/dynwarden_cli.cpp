// dynwarden: command-line front end for the covert-channel / warden simulator.
//
//   dynwarden channels list
//   dynwarden trial  --warden dynamic --rd 0.4 --fr 2 --target 400 --seed 1
//   dynwarden sweep  --rd 0.4 --fr 1,2,5,10,20,35 --trials 20 --seed 7 --out fig4.csv
//   dynwarden sweep  --figures plotdata
//   dynwarden table1 --trials 20 --out table1.csv
//   dynwarden accept --suite primary
//
// Exit codes: 0 success, 1 usage error, 2 a scenario had more than half of
// its trials time out, 3 at least one acceptance criterion failed.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dynwarden/acceptance.hpp"
#include "dynwarden/dynwarden.hpp"

namespace dw = dynwarden;
namespace fs = std::filesystem;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitTimeouts = 2;
constexpr int kExitAcceptance = 3;

struct Flags {
  std::string scenario_file;
  std::string warden = "none";
  double rr = 0.95;
  double rd = 0.4;
  std::string fr = "2";
  std::string fr_range;
  std::string rd_range;
  std::string variant;
  std::uint64_t target = 400;
  std::uint64_t trials = 20;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  std::string strategy = "adaptive";
  std::string probe_selection = "sweep";
  double com_gap = 0.75;
  double probe_spacing = 0.05;
  int probe_burst = 5;
  int com_burst = 5;
  double cr_timeout = 5.0;
  double nel_pause = 1.0;
  double warden_latency = 0.01;
  double nel_latency = 0.01;
  double warden_loss = 0.0;
  double nel_loss = 0.0;
  std::string rounding = "half_up";
  double timeout_factor = 10.0;
  std::string out;
};

// Options shared by trial/sweep/table1. Returns the option handles so the
// caller can tell which ones were given explicitly.
std::map<std::string, CLI::Option*> add_common(CLI::App* app, Flags& f, bool with_warden) {
  std::map<std::string, CLI::Option*> o;
  o["scenario"] = app->add_option("--scenario", f.scenario_file, "Scenario file (key = value)");
  if (with_warden) {
    o["warden"] = app->add_option("--warden", f.warden, "none|regular|dynamic|random")
                      ->check(CLI::IsMember({"none", "regular", "dynamic", "random"}));
    o["rr"] = app->add_option("--rr", f.rr, "Regular warden active fraction");
    o["fr_range"] = app->add_option("--fr-range", f.fr_range, "Random warden f_R range lo,hi");
    o["rd_range"] = app->add_option("--rd-range", f.rd_range, "Random warden R_D range lo,hi");
    o["variant"] = app->add_option("--variant", f.variant, "Random warden variant V1..V4");
  }
  o["rd"] = app->add_option("--rd", f.rd, "Dynamic warden active fraction R_D");
  o["target"] = app->add_option("--target", f.target, "COM packets the receiver must collect");
  o["seed"] = app->add_option("--seed", f.seed, "Seed (root seed for multi-trial runs)");
  o["jobs"] = app->add_option("--jobs", f.jobs, "Worker threads for trials");
  o["strategy"] = app->add_option("--strategy", f.strategy, "adaptive|fixed")
                      ->check(CLI::IsMember({"adaptive", "fixed"}));
  o["probe_selection"] =
      app->add_option("--probe-selection", f.probe_selection, "sweep|skip_nonblocked")
          ->check(CLI::IsMember({"sweep", "skip_nonblocked"}));
  o["com_gap"] = app->add_option("--com-gap", f.com_gap, "Seconds between COM packets");
  o["probe_spacing"] = app->add_option("--probe-spacing", f.probe_spacing, "Seconds between probes in a burst");
  o["probe_burst"] = app->add_option("--probe-burst", f.probe_burst, "Probes per announcement");
  o["com_burst"] = app->add_option("--com-burst", f.com_burst, "COM packets per channel pick");
  o["cr_timeout"] = app->add_option("--cr-timeout", f.cr_timeout, "Receiver probe verdict timeout (s)");
  o["nel_pause"] = app->add_option("--nel-pause", f.nel_pause, "Pause between NEL cycles (s)");
  o["warden_latency"] = app->add_option("--warden-latency", f.warden_latency, "Warden link latency (s)");
  o["nel_latency"] = app->add_option("--nel-latency", f.nel_latency, "NEL link latency (s)");
  o["warden_loss"] = app->add_option("--warden-loss", f.warden_loss, "Warden link loss probability");
  o["nel_loss"] = app->add_option("--nel-loss", f.nel_loss, "NEL link loss probability");
  o["rounding"] = app->add_option("--rounding", f.rounding, "half_up|floor|ceil")
                      ->check(CLI::IsMember({"half_up", "floor", "ceil"}));
  o["timeout_factor"] =
      app->add_option("--timeout-factor", f.timeout_factor, "Virtual-time cap / no-warden baseline");
  o["out"] = app->add_option("--out", f.out, "Output CSV path (default: stdout)");
  for (auto& [name, opt] : o) opt->capture_default_str();
  return o;
}

dw::ScenarioConfig build_config(const Flags& f, const std::map<std::string, CLI::Option*>& o) {
  dw::ScenarioConfig cfg;
  if (!f.scenario_file.empty()) cfg = dw::load_scenario(f.scenario_file);
  auto given = [&](const char* k) {
    auto it = o.find(k);
    return it != o.end() && it->second->count() > 0;
  };
  const bool file = !f.scenario_file.empty();
  auto use = [&](const char* k) { return !file || given(k); };

  if (o.count("warden") && use("warden")) {
    if (f.warden == "none") {
      cfg.trial.warden = dw::NoWarden{};
    } else if (f.warden == "regular") {
      cfg.trial.warden = dw::RegularWarden{f.rr};
    } else if (f.warden == "dynamic") {
      cfg.trial.warden = dw::DynamicWarden{f.rd, dw::parse_double(f.fr, "--fr")};
    } else {
      dw::RandomDynamicWarden w = f.variant.empty()
                                      ? dw::RandomDynamicWarden{}
                                      : dw::random_variant(dw::parse_variant(f.variant));
      if (!f.fr_range.empty()) w.reload_interval = dw::parse_range(f.fr_range, "--fr-range");
      if (!f.rd_range.empty()) w.rd_fraction = dw::parse_range(f.rd_range, "--rd-range");
      cfg.trial.warden = w;
    }
  }
  if (use("target")) cfg.trial.target = f.target;
  if (use("seed")) cfg.root_seed = f.seed;
  if (use("jobs")) cfg.jobs = f.jobs;
  if (use("strategy"))
    cfg.trial.strategy = f.strategy == "fixed" ? dw::SenderStrategy::FixedSingleChannel
                                               : dw::SenderStrategy::AdaptiveSwitching;
  if (use("probe_selection"))
    cfg.trial.probe_selection = f.probe_selection == "skip_nonblocked"
                                    ? dw::ProbeSelection::SkipNonBlocked
                                    : dw::ProbeSelection::Sweep;
  auto& t = cfg.trial.timing;
  if (use("com_gap")) t.com_gap = dw::seconds(f.com_gap);
  if (use("probe_spacing")) t.probe_spacing = dw::seconds(f.probe_spacing);
  if (use("probe_burst")) t.probe_burst = f.probe_burst;
  if (use("com_burst")) t.com_burst = f.com_burst;
  if (use("cr_timeout")) t.cr_timeout = dw::seconds(f.cr_timeout);
  if (use("nel_pause")) t.nel_pause = dw::seconds(f.nel_pause);
  if (use("warden_latency")) cfg.trial.warden_link.latency = dw::seconds(f.warden_latency);
  if (use("nel_latency")) cfg.trial.nel_link.latency = dw::seconds(f.nel_latency);
  if (use("warden_loss")) cfg.trial.warden_link.loss_prob = f.warden_loss;
  if (use("nel_loss")) cfg.trial.nel_link.loss_prob = f.nel_loss;
  if (use("rounding"))
    cfg.trial.rounding = f.rounding == "floor" ? dw::Rounding::Floor
                         : f.rounding == "ceil" ? dw::Rounding::Ceil
                                                : dw::Rounding::HalfUp;
  if (use("timeout_factor")) cfg.trial.timeout_factor = f.timeout_factor;
  if (t.probe_burst < 1 || t.com_burst < 1) throw std::invalid_argument("burst sizes must be >= 1");
  dw::validate(cfg.trial.warden);
  return cfg;
}

// Relative output paths land under $DYNWARDEN_OUT_DIR when it is set.
fs::path resolve_output(const std::string& p) {
  fs::path path(p);
  if (path.is_relative()) {
    if (const char* dir = std::getenv("DYNWARDEN_OUT_DIR"); dir && *dir) return fs::path(dir) / path;
  }
  return path;
}

void write_output(const std::string& out, const std::string& content) {
  if (out.empty()) {
    std::cout << content;
  } else {
    dw::write_file(resolve_output(out), content);
  }
}

bool timeout_dominated(const dw::ScenarioResult& r) { return 2 * r.aggregate.timeouts > r.trials; }

int report_timeouts(const std::vector<dw::ScenarioResult>& results) {
  int code = 0;
  for (const auto& r : results) {
    for (const auto& msg : r.timeout_messages) std::cerr << r.name << ": " << msg << "\n";
    if (timeout_dominated(r)) code = kExitTimeouts;
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamic warden vs adaptive covert channel simulator"};
  app.require_subcommand(1, 1);

  auto* channels = app.add_subcommand("channels", "Covert channel catalog");
  auto* channels_list = channels->add_subcommand("list", "Print the catalog as CSV");
  channels->require_subcommand(1, 1);

  Flags trial_flags;
  auto* trial = app.add_subcommand("trial", "Run one trial and print its result row");
  auto trial_opts = add_common(trial, trial_flags, true);
  trial_opts["fr"] = trial->add_option("--fr", trial_flags.fr, "Dynamic warden reload interval f_R (s)")
                         ->capture_default_str();
  std::string trace_path;
  trial->add_option("--trace", trace_path, "Write the event trace CSV here");

  Flags sweep_flags;
  sweep_flags.warden = "dynamic";
  auto* sweep = app.add_subcommand("sweep", "Dynamic warden f_R sweep (aggregate CSV)");
  auto sweep_opts = add_common(sweep, sweep_flags, false);
  std::string fr_list = "1,2,3,4,5,10,15,20,25,30,35";
  sweep_opts["fr"] = sweep->add_option("--fr", fr_list, "Comma-separated f_R values")->capture_default_str();
  sweep_opts["trials"] = sweep->add_option("--trials", sweep_flags.trials, "Trials per row")->capture_default_str();
  std::string figures_dir;
  auto* figures_opt = sweep->add_option("--figures", figures_dir,
                                        "Write fig4..fig12.csv and table1.csv into this directory")
                          ->expected(0, 1);

  Flags table_flags;
  auto* table1 = app.add_subcommand("table1", "Random-dynamic variants V1-V4 x targets 400/200/100");
  auto table_opts = add_common(table1, table_flags, false);
  table_opts["trials"] = table1->add_option("--trials", table_flags.trials, "Trials per row")->capture_default_str();

  auto* accept = app.add_subcommand("accept", "Run the acceptance criteria");
  std::string suite = "primary";
  dw::acceptance::Options acc;
  accept->add_option("--suite", suite, "Criteria suite")->check(CLI::IsMember({"primary"}))->capture_default_str();
  accept->add_option("--seed", acc.root_seed, "Root seed")->capture_default_str();
  accept->add_option("--trials", acc.trials, "Trials per scenario")->capture_default_str();
  accept->add_option("--jobs", acc.jobs, "Worker threads")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (channels_list->parsed()) {
      std::cout << dw::catalog_csv();
      return 0;
    }

    if (trial->parsed()) {
      auto cfg = build_config(trial_flags, trial_opts);
      std::ofstream trace_out;
      dw::TraceSink sink;
      if (!trace_path.empty()) {
        const auto p = resolve_output(trace_path);
        trace_out.open(p);
        if (!trace_out) throw std::runtime_error("cannot open " + p.string());
        trace_out << dw::trace_csv_header();
        sink = [&](const dw::TraceRecord& r) { trace_out << dw::to_csv_line(r); };
      }
      try {
        const auto r = dw::run_trial(cfg.trial, cfg.root_seed, sink);
        write_output(trial_flags.out, std::string(dw::kTrialHeader) + "\n" +
                                          dw::trial_csv_row(cfg.root_seed, r) + "\n");
      } catch (const dw::TrialTimeout& e) {
        std::cerr << "timeout: " << e.what() << "\n";
        return kExitTimeouts;
      }
      return 0;
    }

    if (sweep->parsed()) {
      auto cfg = build_config(sweep_flags, sweep_opts);
      if (sweep_opts["trials"]->count() || sweep_flags.scenario_file.empty()) cfg.trials = sweep_flags.trials;
      if (figures_opt->count()) {
        const char* env = std::getenv("DYNWARDEN_OUT_DIR");
        fs::path dir = !figures_dir.empty() ? resolve_output(figures_dir)
                       : (env && *env)      ? fs::path(env)
                                            : fs::path("plotdata");
        dw::write_figures(dir, cfg);
        std::cerr << "wrote figure data to " << dir.string() << "\n";
        return 0;
      }
      std::vector<double> frs;
      if (sweep_opts["fr"]->count() || cfg.fr_sweep.empty()) {
        frs = dw::parse_double_list(fr_list, "--fr");
      } else {
        frs = cfg.fr_sweep;
      }
      double rd = sweep_flags.rd;
      if (!sweep_flags.scenario_file.empty() && !sweep_opts["rd"]->count()) {
        if (auto* d = std::get_if<dw::DynamicWarden>(&cfg.trial.warden)) rd = d->rd_fraction;
      }
      if (cfg.name == "scenario") cfg.name = "dynamic/rd=" + dw::format_fraction(rd);
      const auto rows = dw::sweep_fr(dw::DynamicWarden{rd, 2.0}, frs, cfg);
      write_output(sweep_flags.out, dw::to_csv(dw::to_rows(rows)));
      return report_timeouts(rows);
    }

    if (table1->parsed()) {
      auto cfg = build_config(table_flags, table_opts);
      if (table_opts["trials"]->count() || table_flags.scenario_file.empty()) cfg.trials = table_flags.trials;
      const auto rows = dw::run_table1(cfg);
      write_output(table_flags.out, dw::to_csv(dw::to_rows(rows)));
      return report_timeouts(rows);
    }

    if (accept->parsed()) {
      bool all = true;
      dw::acceptance::run_primary(acc, [&](const dw::acceptance::Outcome& o) {
        all = all && o.pass;
        std::cout << dw::acceptance::format_line(o) << std::endl;
      });
      return all ? 0 : kExitAcceptance;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
