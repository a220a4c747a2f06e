#include <gtest/gtest.h>

#include "dynwarden/packet.hpp"

using namespace dynwarden;

TEST(Packet, DefaultHeaderMatchesSchema) {
  const Packet p = default_packet(PacketKind::COM, 0);
  for (const auto& f : kSchema) EXPECT_EQ(p.get(f.id), f.initial) << f.name;
  EXPECT_EQ(p.get(FieldId::V4_TTL), 64u);
  EXPECT_EQ(p.get(FieldId::T_WINDOW), 8192u);
}

TEST(Packet, SchemaDefaultsFitTheirWidths) {
  for (const auto& f : kSchema) {
    EXPECT_GE(f.width, 1u);
    EXPECT_LE(f.width, 32u);
    EXPECT_LE(f.initial, max_value(f.id)) << f.name;
  }
}

// set/get round trip on every field at 0, max and a middle value; other
// fields unchanged.
TEST(Packet, SetGetRoundTripIsLocal) {
  const Packet base = default_packet(PacketKind::LEGIT, 1);
  for (const auto& f : kSchema) {
    for (std::uint64_t v : {std::uint64_t{0}, max_value(f.id), max_value(f.id) / 2}) {
      const Packet q = set_field(base, f.id, v);
      EXPECT_EQ(get_field(q, f.id), v) << f.name;
      for (const auto& g : kSchema) {
        if (g.id != f.id) {
          EXPECT_EQ(q.get(g.id), base.get(g.id));
        }
      }
    }
  }
}

TEST(Packet, WidthOverflowThrows) {
  const Packet p = default_packet(PacketKind::COM, 0);
  EXPECT_THROW((void)p.with(FieldId::V4_DF_FLAG, 2), WidthOverflow);
  EXPECT_THROW((void)p.with(FieldId::V4_IDENTIFICATION, 0x10000), WidthOverflow);
  EXPECT_NO_THROW((void)p.with(FieldId::V4_IDENTIFICATION, 0xFFFF));
}

TEST(Packet, WithDoesNotMutateOriginal) {
  const Packet p = default_packet(PacketKind::COM, 0);
  const Packet q = p.with(FieldId::V4_TTL, 1);
  EXPECT_EQ(p.get(FieldId::V4_TTL), 64u);
  EXPECT_FALSE(p.same_header(q));
}

TEST(Packet, TraceLineListsNonDefaultFields) {
  const Packet p = default_packet(PacketKind::PROBE, 12)
                       .with(FieldId::V4_TTL, 65)
                       .sent_at(seconds(1.5));
  EXPECT_EQ(to_trace_line(p), "12,PROBE,1.500000,V4_TTL=65");
  EXPECT_EQ(to_trace_line(default_packet(PacketKind::COM, 3)), "3,COM,0.000000");
}

TEST(Packet, ChannelHintIsNotPartOfHeader) {
  const Packet p = default_packet(PacketKind::COM, 0);
  EXPECT_TRUE(p.same_header(p.with_channel_hint(7)));
  EXPECT_EQ(p.with_channel_hint(7).channel_hint(), 7u);
}
