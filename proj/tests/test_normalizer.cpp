#include <gtest/gtest.h>

#include "dynwarden/normalizer.hpp"
#include "dynwarden/random.hpp"

using namespace dynwarden;

namespace {

Packet carrying(std::size_t channel_index) {
  return encode(channel(ChannelId(channel_index)), default_packet(PacketKind::COM, 0), 1);
}

}  // namespace

// rule r matches the 1-encoding of channel c iff r == rule_for_channel(c).
TEST(Normalizer, RuleChannelMatrixIsIdentity) {
  for (std::size_t c = 0; c < kChannelCount; ++c) {
    const Packet p = carrying(c);
    for (std::size_t r = 0; r < kRuleCount; ++r) {
      EXPECT_EQ(rule(RuleId(r)).matches(p), r == c) << "rule " << r << " channel " << c;
    }
    EXPECT_EQ(rule_for_channel(ChannelId(c)).index(), c);
  }
}

TEST(Normalizer, ApplyDestroysTheBit) {
  for (std::size_t c = 0; c < kChannelCount; ++c) {
    const Packet out = rule(RuleId(c)).apply(carrying(c));
    EXPECT_EQ(decode(channel(ChannelId(c)), out), 0);
    EXPECT_TRUE(out.same_header(default_packet(PacketKind::COM, 0)));
  }
}

TEST(Normalizer, InactiveRuleLeavesPacketUntouched) {
  for (std::size_t c = 0; c < kChannelCount; ++c) {
    RuleSet all_but = RuleSet::all();
    all_but.erase(RuleId(c));
    DispositionCounters ctr;
    const Packet p = carrying(c);
    const auto out = apply_ruleset(all_but, p, ctr);
    EXPECT_EQ(out.disposition, Disposition::FORWARDED);
    EXPECT_TRUE(out.packet.same_header(p));
    EXPECT_EQ(decode(channel(ChannelId(c)), out.packet), 1);
  }
}

TEST(Normalizer, ActiveRuleNormalizes) {
  for (std::size_t c = 0; c < kChannelCount; ++c) {
    DispositionCounters ctr;
    const auto out = apply_ruleset(RuleSet::of({c}), carrying(c), ctr);
    EXPECT_EQ(out.disposition, Disposition::NORMALIZED);
    EXPECT_EQ(decode(channel(ChannelId(c)), out.packet), 0);
  }
}

TEST(Normalizer, CountersConserveAndCountEvaluations) {
  Rng rng(77);
  DispositionCounters ctr;
  std::uint64_t expected_evals = 0;
  const std::uint64_t n = 5000;
  for (std::uint64_t i = 0; i < n; ++i) {
    const RuleSet active = RuleSet::of(rng.sample_without_replacement(kRuleCount, rng.below(51)));
    (void)apply_ruleset(active, carrying(rng.below(kChannelCount)), ctr);
    expected_evals += active.size();
  }
  EXPECT_EQ(ctr.normalized + ctr.forwarded, n);
  EXPECT_EQ(ctr.processed(), n);
  EXPECT_EQ(ctr.rule_evaluations, expected_evals);
}

TEST(Normalizer, EmptyRuleSetIsTransparent) {
  DispositionCounters ctr;
  for (std::size_t c = 0; c < kChannelCount; ++c) {
    const auto out = apply_ruleset(RuleSet{}, carrying(c), ctr);
    EXPECT_EQ(out.disposition, Disposition::FORWARDED);
  }
  EXPECT_EQ(ctr.rule_evaluations, 0u);
  EXPECT_EQ(ctr.forwarded, kChannelCount);
}

TEST(Normalizer, RuleSetBasics) {
  RuleSet s = RuleSet::of({1, 3, 5});
  EXPECT_EQ(s.size(), 3u);
  EXPECT_TRUE(s.contains(RuleId(3)));
  s.erase(RuleId(3));
  EXPECT_FALSE(s.contains(RuleId(3)));
  s.insert(RuleId(49));
  ASSERT_EQ(s.members().size(), 3u);
  EXPECT_EQ(s.members().back().index(), 49u);
  EXPECT_EQ(RuleSet::all().size(), kRuleCount);
}
