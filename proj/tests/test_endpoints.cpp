#include <set>

#include <gtest/gtest.h>

#include "dynwarden/endpoints.hpp"
#include "dynwarden/normalizer.hpp"

using namespace dynwarden;

TEST(CovertSender, NelCycleEmitsProbeBurstAndPaces) {
  CovertSender cs(1, EndpointTiming{});
  const auto cycle = cs.start_nel_cycle(seconds(10));
  ASSERT_TRUE(cycle.announce);
  ASSERT_EQ(cycle.probes.size(), 5u);
  for (std::size_t k = 0; k < cycle.probes.size(); ++k) {
    const auto& p = cycle.probes[k];
    EXPECT_EQ(p.kind(), PacketKind::PROBE);
    EXPECT_EQ(p.send_time(), seconds(10.0 + 0.05 * static_cast<double>(k)));
    EXPECT_EQ(decode(channel(cycle.announce->channel), p), 1);
  }
  EXPECT_EQ(cycle.next_cycle, seconds(11.2));
  EXPECT_EQ(cs.probes_sent(), 5u);
}

TEST(CovertSender, SweepCoversEveryChannelOncePerRound) {
  CovertSender cs(2, EndpointTiming{});
  for (int round = 0; round < 3; ++round) {
    std::set<ChannelId> seen;
    for (std::size_t i = 0; i < kChannelCount; ++i) {
      seen.insert(cs.start_nel_cycle(seconds(2.0 * static_cast<double>(i))).announce->channel);
    }
    EXPECT_EQ(seen.size(), kChannelCount);
  }
}

TEST(CovertSender, SkipNonBlockedNeverReprobesKnownChannels) {
  CovertSender cs(3, EndpointTiming{}, SenderStrategy::AdaptiveSwitching,
                  ProbeSelection::SkipNonBlocked);
  for (std::size_t c = 0; c < 45; ++c) cs.on_result(NelMessage::result(c, ChannelId(c), false));
  for (int i = 0; i < 200; ++i) {
    const auto cycle = cs.start_nel_cycle(seconds(i));
    ASSERT_TRUE(cycle.announce);
    EXPECT_GE(cycle.announce->channel.index(), 45u);
  }
  for (std::size_t c = 45; c < 50; ++c) cs.on_result(NelMessage::result(c, ChannelId(c), false));
  EXPECT_FALSE(cs.start_nel_cycle(seconds(500)).announce);
}

TEST(CovertSender, ResultsEvictAndReadd) {
  CovertSender cs(4, EndpointTiming{});
  EXPECT_FALSE(cs.com_ready());
  EXPECT_TRUE(cs.on_result(NelMessage::result(0, ChannelId(7), false)));
  EXPECT_TRUE(cs.non_blocked().contains(ChannelId(7)));
  EXPECT_FALSE(cs.on_result(NelMessage::result(1, ChannelId(9), false)));
  cs.on_result(NelMessage::result(2, ChannelId(7), true));
  EXPECT_FALSE(cs.non_blocked().contains(ChannelId(7)));
  cs.on_result(NelMessage::result(3, ChannelId(7), false));
  EXPECT_TRUE(cs.non_blocked().contains(ChannelId(7)));
  EXPECT_EQ(cs.non_blocked().size(), 2u);
}

TEST(CovertSender, ComWaitsForNonBlockedChannel) {
  CovertSender cs(5, EndpointTiming{});
  EXPECT_FALSE(cs.com_tick(seconds(0)));
  EXPECT_EQ(cs.com_sent(), 0u);
}

TEST(CovertSender, ComBurstsOfFiveOnOneChannel) {
  CovertSender cs(6, EndpointTiming{});
  for (std::size_t c : {3u, 11u, 29u}) cs.on_result(NelMessage::result(c, ChannelId(c), false));
  for (int burst = 0; burst < 20; ++burst) {
    std::optional<ChannelId> ch;
    for (int k = 0; k < 5; ++k) {
      const auto p = cs.com_tick(seconds(0.75 * (burst * 5 + k)));
      ASSERT_TRUE(p);
      EXPECT_EQ(p->kind(), PacketKind::COM);
      if (!ch) ch = cs.burst_channel();
      EXPECT_EQ(cs.burst_channel(), *ch);
      EXPECT_EQ(decode(channel(*ch), *p), 1);
    }
    EXPECT_TRUE(cs.non_blocked().contains(*ch));
    EXPECT_EQ(cs.burst_remaining(), 0);
  }
  EXPECT_EQ(cs.bursts(), 20u);
  EXPECT_EQ(cs.com_sent(), 100u);
}

TEST(CovertSender, StartedBurstFinishesAfterEviction) {
  CovertSender cs(7, EndpointTiming{});
  cs.on_result(NelMessage::result(0, ChannelId(4), false));
  ASSERT_TRUE(cs.com_tick(seconds(0)));
  cs.on_result(NelMessage::result(1, ChannelId(4), true));
  for (int k = 1; k < 5; ++k) EXPECT_TRUE(cs.com_tick(seconds(k)));
  EXPECT_FALSE(cs.com_tick(seconds(5)));
}

TEST(CovertSender, SingleNonBlockedChannelIsReused) {
  CovertSender cs(8, EndpointTiming{});
  cs.on_result(NelMessage::result(0, ChannelId(21), false));
  for (int i = 0; i < 50; ++i) {
    ASSERT_TRUE(cs.com_tick(seconds(i)));
    EXPECT_EQ(cs.burst_channel(), ChannelId(21));
  }
}

TEST(CovertSender, FixedStrategyUsesOneChannel) {
  CovertSender cs(9, EndpointTiming{}, SenderStrategy::FixedSingleChannel);
  ASSERT_TRUE(cs.fixed_channel());
  EXPECT_TRUE(cs.com_ready());
  for (int i = 0; i < 40; ++i) {
    const auto p = cs.com_tick(seconds(i));
    ASSERT_TRUE(p);
    EXPECT_EQ(decode(channel(*cs.fixed_channel()), *p), 1);
  }
}

TEST(CovertReceiver, ProbeConfirmsAnnouncement) {
  CovertReceiver cr(400, EndpointTiming{});
  const ChannelId c(12);
  EXPECT_EQ(cr.on_announce(NelMessage::announce(0, c), seconds(1)), seconds(6));
  const Packet probe = encode(channel(c), default_packet(PacketKind::PROBE, 0), 1);
  const auto verdict = cr.on_packet(probe, seconds(1.1));
  ASSERT_TRUE(verdict);
  EXPECT_EQ(*verdict, NelMessage::result(0, c, false));
  EXPECT_FALSE(cr.on_packet(probe, seconds(1.2)));
  EXPECT_FALSE(cr.on_timeout(0));
  EXPECT_EQ(cr.start_time(), seconds(1));
  EXPECT_EQ(cr.received(), 0u);
}

TEST(CovertReceiver, NormalizedProbesTimeOutAsBlocked) {
  CovertReceiver cr(400, EndpointTiming{});
  const ChannelId c(30);
  cr.on_announce(NelMessage::announce(5, c), seconds(0));
  const Packet scrubbed = rule(rule_for_channel(c))
                              .apply(encode(channel(c), default_packet(PacketKind::PROBE, 0), 1));
  for (int k = 0; k < 5; ++k) EXPECT_FALSE(cr.on_packet(scrubbed, seconds(0.05 * k)));
  const auto verdict = cr.on_timeout(5);
  ASSERT_TRUE(verdict);
  EXPECT_TRUE(verdict->blocked);
  EXPECT_EQ(verdict->channel, c);
  EXPECT_EQ(cr.blocked_verdicts(), 1u);
  EXPECT_FALSE(cr.on_timeout(5));
}

TEST(CovertReceiver, LateProbeDoesNotConfirm) {
  CovertReceiver cr(400, EndpointTiming{});
  const ChannelId c(2);
  cr.on_announce(NelMessage::announce(0, c), seconds(0));
  const Packet probe = encode(channel(c), default_packet(PacketKind::PROBE, 0), 1);
  EXPECT_FALSE(cr.on_packet(probe, seconds(5.5)));
}

TEST(CovertReceiver, CountsOnlyIntactComPackets) {
  CovertReceiver cr(3, EndpointTiming{});
  const ChannelId c(40);
  const Packet com = encode(channel(c), default_packet(PacketKind::COM, 0), 1);
  const Packet probe = encode(channel(c), default_packet(PacketKind::PROBE, 1), 1);
  cr.on_packet(rule(rule_for_channel(c)).apply(com), seconds(1));
  EXPECT_EQ(cr.received(), 0u);
  cr.on_packet(probe, seconds(1));
  EXPECT_EQ(cr.received(), 0u);
  std::uint64_t last = 0;
  for (int i = 0; i < 5; ++i) {
    cr.on_packet(com, seconds(2 + i));
    EXPECT_GE(cr.received(), last);
    last = cr.received();
  }
  EXPECT_EQ(cr.received(), 3u);
  EXPECT_TRUE(cr.done());
  EXPECT_EQ(cr.stop_time(), seconds(4));
}
