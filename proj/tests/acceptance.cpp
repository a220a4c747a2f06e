#include <cstdio>
#include <cstdlib>
#include <memory>

#include <gtest/gtest.h>

#include "dynwarden/acceptance.hpp"

using namespace dynwarden::acceptance;

namespace {

Options options() {
  Options opt;
  if (const char* seed = std::getenv("DYNWARDEN_ACCEPT_SEED")) opt.root_seed = std::strtoull(seed, nullptr, 10);
  return opt;
}

class Acceptance : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { cache_ = std::make_unique<ScenarioCache>(options()); }
  static void TearDownTestSuite() { cache_.reset(); }

  static void check(const Outcome& o) {
    std::printf("%s\n", format_line(o).c_str());
    std::fflush(stdout);
    EXPECT_TRUE(o.pass) << o.measured;
  }

  static inline std::unique_ptr<ScenarioCache> cache_;
};

}  // namespace

TEST_F(Acceptance, C01_RegularNearTransparency) { check(regular_near_transparency(*cache_)); }
TEST_F(Acceptance, C02_DynamicSlowsTransfer) { check(dynamic_effectiveness(*cache_)); }
TEST_F(Acceptance, C03_ReloadIntervalTrend) { check(reload_interval_trend(*cache_)); }
TEST_F(Acceptance, C04_TrafficInflation) { check(traffic_inflation(*cache_)); }
TEST_F(Acceptance, C05_NormalizedOrdering) { check(normalized_ordering(*cache_)); }
TEST_F(Acceptance, C06_LengthLinearity) { check(length_linearity(*cache_)); }
TEST_F(Acceptance, C07_FixedChannelOracle) { check(fixed_channel_oracle(*cache_)); }
TEST_F(Acceptance, C08_RandomVariantOrdering) { check(random_variant_ordering(*cache_)); }
TEST_F(Acceptance, C09_PropertySuite) { check(property_suite()); }
TEST_F(Acceptance, C10_CostProxies) { check(cost_proxies(*cache_)); }
