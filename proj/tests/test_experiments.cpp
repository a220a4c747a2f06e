#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "dynwarden/experiments.hpp"

using namespace dynwarden;

namespace {

ScenarioConfig small(WardenKind w, std::string name, std::uint64_t trials = 5) {
  ScenarioConfig cfg;
  cfg.name = std::move(name);
  cfg.trial.warden = std::move(w);
  cfg.trial.target = 100;
  cfg.trials = trials;
  return cfg;
}

std::filesystem::path temp_dir(const std::string& leaf) {
  auto dir = std::filesystem::temp_directory_path() / ("dynwarden_test_" + leaf);
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST(Summarize, PopulationStandardDeviation) {
  const auto s = summarize({2, 4, 4, 4, 5, 5, 7, 9});
  EXPECT_DOUBLE_EQ(s.mean, 5.0);
  EXPECT_DOUBLE_EQ(s.std, 2.0);
  EXPECT_DOUBLE_EQ(summarize({}).mean, 0.0);
}

TEST(Scenario, AggregateIsReproducible) {
  const auto cfg = small(DynamicWarden{0.4, 2}, "repro");
  const auto a = run_scenario(cfg);
  const auto b = run_scenario(cfg);
  EXPECT_EQ(a.per_trial, b.per_trial);
  EXPECT_EQ(to_csv(to_rows({a})), to_csv(to_rows({b})));
  EXPECT_EQ(a.aggregate.n, 5u);
  EXPECT_LE(a.aggregate.n, a.trials);
}

TEST(Scenario, JobsDoNotChangeResults) {
  auto cfg = small(DynamicWarden{0.4, 2}, "jobs", 8);
  const auto serial = run_scenario(cfg);
  cfg.jobs = 4;
  const auto parallel = run_scenario(cfg);
  EXPECT_EQ(serial.per_trial, parallel.per_trial);
}

TEST(Scenario, SeedsDependOnNameAndIndex) {
  EXPECT_EQ(trial_seed(1, "a", 0), trial_seed(1, "a", 0));
  EXPECT_NE(trial_seed(1, "a", 0), trial_seed(1, "a", 1));
  EXPECT_NE(trial_seed(1, "a", 0), trial_seed(1, "b", 0));
  EXPECT_NE(trial_seed(1, "a", 0), trial_seed(2, "a", 0));
}

TEST(Scenario, TimeoutsAreCountedNotAveraged) {
  auto cfg = small(RegularWarden{1.0}, "blocked", 3);
  cfg.trial.target = 5;
  cfg.trial.timeout_factor = 1.0;
  const auto r = run_scenario(cfg);
  EXPECT_EQ(r.aggregate.timeouts, 3u);
  EXPECT_EQ(r.aggregate.n, 0u);
  EXPECT_EQ(r.timeout_messages.size(), 3u);
}

TEST(Scenario, RejectsBadConfig) {
  auto cfg = small(NoWarden{}, "bad");
  cfg.trials = 0;
  EXPECT_THROW(run_scenario(cfg), std::invalid_argument);
  cfg.trials = 1;
  cfg.trial.warden = DynamicWarden{2.0, 2};
  EXPECT_THROW(run_scenario(cfg), std::invalid_argument);
}

TEST(Sweep, RowsAreIndependentOfSweepOrder) {
  ScenarioConfig base = small(NoWarden{}, "sweep", 3);
  const auto fwd = sweep_fr(DynamicWarden{0.4, 2}, {2, 10}, base);
  const auto rev = sweep_fr(DynamicWarden{0.4, 2}, {10, 2}, base);
  ASSERT_EQ(fwd.size(), 2u);
  EXPECT_EQ(fwd[0].name, "sweep/fr=2");
  EXPECT_EQ(fwd[0].per_trial, rev[1].per_trial);
  EXPECT_EQ(fwd[1].per_trial, rev[0].per_trial);
}

TEST(Table1, TwelveRowsWithVariantConfigs) {
  ScenarioConfig base;
  base.trials = 1;
  const auto rows = run_table1(base);
  ASSERT_EQ(rows.size(), 12u);
  EXPECT_EQ(rows[0].name, "V1/400");
  EXPECT_EQ(rows[2].target, 100u);
  const auto& v3 = std::get<RandomDynamicWarden>(rows[6].warden);
  EXPECT_EQ(v3.reload_interval, (Range{1, 10}));
  EXPECT_EQ(v3.rd_fraction, (Range{0.2, 1.0}));
  EXPECT_EQ(rows[6].name, "V3/400");
}

TEST(Csv, HeaderAndRoundTrip) {
  const auto r = run_scenario(small(DynamicWarden{0.3, 5}, "csv", 3));
  const auto text = to_csv(to_rows({r}));
  EXPECT_EQ(text.substr(0, kAggregateHeader.size()), kAggregateHeader);
  const auto rows = parse_csv(text);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].scenario, "csv");
  EXPECT_EQ(rows[0].f_r, "5");
  EXPECT_EQ(rows[0].r_d, "0.3");
  EXPECT_EQ(rows[0].trials, 3u);
  EXPECT_NEAR(rows[0].time_mean, r.aggregate.time.mean, 1e-6);
  EXPECT_NEAR(rows[0].total_std, r.aggregate.total.std, 1e-6);
  EXPECT_EQ(to_csv(rows), text);
}

TEST(Csv, ParseRejectsWrongHeader) {
  EXPECT_THROW(parse_csv("nope\n"), std::invalid_argument);
}

TEST(Csv, EmitWithNoRowsThrowsAndWritesNothing) {
  const auto dir = temp_dir("empty");
  const auto path = dir / "out.csv";
  EXPECT_THROW(emit_csv({}, path), std::invalid_argument);
  EXPECT_FALSE(std::filesystem::exists(path));
}

TEST(Csv, EmitCreatesParentDirectories) {
  const auto dir = temp_dir("emit");
  const auto path = dir / "nested" / "out.csv";
  emit_csv(to_rows({run_scenario(small(NoWarden{}, "emit", 2))}), path);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, kAggregateHeader);
  std::filesystem::remove_all(dir);
}

TEST(ScenarioFile, ParsesKeysAndComments) {
  const auto cfg = parse_scenario(
      "# dynamic run\n"
      "name = d1\n"
      "warden = dynamic\n"
      "rd = 0.3\n"
      "fr = 5\n"
      "target = 200\n"
      "trials = 7\n"
      "seed = 9\n"
      "com_gap = 0.5\n"
      "probe_selection = skip_nonblocked\n"
      "fr_sweep = 1,2,3\n");
  EXPECT_EQ(cfg.name, "d1");
  EXPECT_EQ(std::get<DynamicWarden>(cfg.trial.warden), (DynamicWarden{0.3, 5}));
  EXPECT_EQ(cfg.trial.target, 200u);
  EXPECT_EQ(cfg.trials, 7u);
  EXPECT_EQ(cfg.root_seed, 9u);
  EXPECT_EQ(cfg.trial.timing.com_gap, seconds(0.5));
  EXPECT_EQ(cfg.trial.probe_selection, ProbeSelection::SkipNonBlocked);
  EXPECT_EQ(cfg.fr_sweep, (std::vector<double>{1, 2, 3}));
}

TEST(ScenarioFile, VariantShorthand) {
  const auto cfg = parse_scenario("warden = random\nvariant = V4\n");
  EXPECT_EQ(std::get<RandomDynamicWarden>(cfg.trial.warden), random_variant(RandomVariant::V4));
}

TEST(ScenarioFile, Errors) {
  EXPECT_THROW(parse_scenario("warden = dynamic\nbogus = 1\n"), std::invalid_argument);
  EXPECT_THROW(parse_scenario("warden = sometimes\n"), std::invalid_argument);
  EXPECT_THROW(parse_scenario("just text\n"), std::invalid_argument);
  EXPECT_THROW(parse_scenario("warden = dynamic\nrd = abc\n"), std::invalid_argument);
  EXPECT_THROW(parse_scenario("warden = regular\nrr = 1.2\n"), std::invalid_argument);
  EXPECT_THROW(parse_scenario("trials = 0\n"), std::invalid_argument);
  EXPECT_THROW(load_scenario("/nonexistent/scenario.cfg"), std::runtime_error);
}

TEST(TrialCsv, RowMatchesHeaderArity) {
  const auto r = run_trial(TrialConfig{}, 1);
  const auto row = trial_csv_row(1, r);
  EXPECT_EQ(split(row, ',').size(), split(kTrialHeader, ',').size());
}
