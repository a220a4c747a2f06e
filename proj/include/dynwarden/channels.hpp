#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "packet.hpp"

namespace dynwarden {

inline constexpr std::size_t kChannelCount = 50;

class ChannelId {
 public:
  constexpr ChannelId() = default;
  constexpr explicit ChannelId(std::size_t index) : index_(index) {
    if (index >= kChannelCount) throw std::out_of_range("ChannelId out of range");
  }
  constexpr std::size_t index() const { return index_; }
  constexpr auto operator<=>(const ChannelId&) const = default;

 private:
  std::size_t index_ = 0;
};

enum class EncodingMode : std::uint8_t {
  SET_BIT,       // bit `a` set            -> 1
  VALUE_MATCH,   // field == a             -> 1
  LSB_MODULATE,  // field is odd           -> 1
  RANGE_SELECT,  // a <= field <= b        -> 1
};

constexpr std::string_view to_string(EncodingMode m) {
  switch (m) {
    case EncodingMode::SET_BIT: return "SET_BIT";
    case EncodingMode::VALUE_MATCH: return "VALUE_MATCH";
    case EncodingMode::LSB_MODULATE: return "LSB_MODULATE";
    case EncodingMode::RANGE_SELECT: return "RANGE_SELECT";
  }
  return "?";
}

struct ChannelParams {
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  constexpr bool operator==(const ChannelParams&) const = default;
};

struct ChannelSpec {
  std::size_t index;
  std::string_view name;
  FieldId field;
  EncodingMode mode;
  ChannelParams params;

  ChannelId id() const { return ChannelId(index); }
};

namespace detail {
using M = EncodingMode;
using F = FieldId;

// Explicit table. Channels sharing a field are chosen so that encoding one
// from the default header never decodes as another (checked by tests).
inline constexpr std::array<ChannelSpec, kChannelCount> kCatalog{{
    {0, "ipv4_reserved_flag", F::V4_RESERVED_FLAG, M::SET_BIT, {0, 0}},
    {1, "ipv4_id_magic", F::V4_IDENTIFICATION, M::VALUE_MATCH, {0xCAFE, 0}},
    {2, "ipv4_df_flag", F::V4_DF_FLAG, M::SET_BIT, {0, 0}},
    {3, "ipv4_mf_flag", F::V4_MF_FLAG, M::SET_BIT, {0, 0}},
    {4, "ipv4_tos_bit7", F::V4_TOS, M::SET_BIT, {7, 0}},
    {5, "ipv4_tos_bit6", F::V4_TOS, M::SET_BIT, {6, 0}},
    {6, "ipv4_tos_lsb", F::V4_TOS, M::LSB_MODULATE, {0, 0}},
    {7, "ipv4_ecn_ect1", F::V4_ECN, M::VALUE_MATCH, {1, 0}},
    {8, "ipv4_ecn_ect0", F::V4_ECN, M::VALUE_MATCH, {2, 0}},
    {9, "ipv4_id_range", F::V4_IDENTIFICATION, M::RANGE_SELECT, {0x1000, 0x1FFF}},
    {10, "ipv4_id_lsb", F::V4_IDENTIFICATION, M::LSB_MODULATE, {0, 0}},
    {11, "ipv4_ttl_lsb", F::V4_TTL, M::LSB_MODULATE, {0, 0}},
    {12, "ipv4_ttl_magic", F::V4_TTL, M::VALUE_MATCH, {128, 0}},
    {13, "ipv4_ttl_high_range", F::V4_TTL, M::RANGE_SELECT, {200, 255}},
    {14, "ipv4_fragoff_bit12", F::V4_FRAG_OFFSET, M::SET_BIT, {12, 0}},
    {15, "ipv4_fragoff_low_range", F::V4_FRAG_OFFSET, M::RANGE_SELECT, {1, 15}},
    {16, "ipv4_optpad_magic", F::V4_OPTION_PADDING, M::VALUE_MATCH, {0xA5, 0}},
    {17, "ipv4_optpad_bit1", F::V4_OPTION_PADDING, M::SET_BIT, {1, 0}},
    {18, "tcp_reserved_bit0", F::T_RESERVED, M::SET_BIT, {0, 0}},
    {19, "tcp_reserved_bit1", F::T_RESERVED, M::SET_BIT, {1, 0}},
    {20, "tcp_reserved_bit2", F::T_RESERVED, M::SET_BIT, {2, 0}},
    {21, "tcp_reserved_bit3", F::T_RESERVED, M::SET_BIT, {3, 0}},
    {22, "tcp_urgptr_magic", F::T_URGENT_PTR, M::VALUE_MATCH, {0xBEEF, 0}},
    {23, "tcp_urgptr_range", F::T_URGENT_PTR, M::RANGE_SELECT, {0x8000, 0x8FFF}},
    {24, "tcp_window_lsb", F::T_WINDOW, M::LSB_MODULATE, {0, 0}},
    {25, "tcp_window_small_range", F::T_WINDOW, M::RANGE_SELECT, {0, 1023}},
    {26, "tcp_window_magic", F::T_WINDOW, M::VALUE_MATCH, {0xFFFE, 0}},
    {27, "tcp_seq_lsb", F::T_SEQ_LSB, M::LSB_MODULATE, {0, 0}},
    {28, "tcp_seq_bit7", F::T_SEQ_LSB, M::SET_BIT, {7, 0}},
    {29, "tcp_ack_magic", F::T_ACK_LSB, M::VALUE_MATCH, {0x5A, 0}},
    {30, "tcp_ack_bit0", F::T_ACK_LSB, M::SET_BIT, {0, 0}},
    {31, "tcp_tsecho_range", F::T_TS_ECHO_LSB, M::RANGE_SELECT, {0x80, 0xBF}},
    {32, "tcp_tsecho_lsb", F::T_TS_ECHO_LSB, M::LSB_MODULATE, {0, 0}},
    {33, "tcp_optpad_bit0", F::T_OPTION_PADDING, M::SET_BIT, {0, 0}},
    {34, "tcp_optpad_bit4", F::T_OPTION_PADDING, M::SET_BIT, {4, 0}},
    {35, "tcp_optpad_magic", F::T_OPTION_PADDING, M::VALUE_MATCH, {0x22, 0}},
    {36, "udp_lenpad_range", F::U_LENGTH_PAD, M::RANGE_SELECT, {1, 127}},
    {37, "udp_lenpad_bit7", F::U_LENGTH_PAD, M::SET_BIT, {7, 0}},
    {38, "udp_sport_lsb", F::U_SRC_PORT_LSB, M::LSB_MODULATE, {0, 0}},
    {39, "udp_sport_magic", F::U_SRC_PORT_LSB, M::VALUE_MATCH, {0xF0, 0}},
    {40, "icmp_id_magic", F::I_ECHO_ID, M::VALUE_MATCH, {0xD00D, 0}},
    {41, "icmp_id_high_range", F::I_ECHO_ID, M::RANGE_SELECT, {0xF000, 0xFFFF}},
    {42, "icmp_seq_lsb", F::I_ECHO_SEQ, M::LSB_MODULATE, {0, 0}},
    {43, "icmp_seq_bit15", F::I_ECHO_SEQ, M::SET_BIT, {15, 0}},
    {44, "icmp_code_range", F::I_CODE, M::RANGE_SELECT, {1, 15}},
    {45, "icmp_code_bit7", F::I_CODE, M::SET_BIT, {7, 0}},
    {46, "tcp_urg_flag", F::T_URG_FLAG, M::SET_BIT, {0, 0}},
    {47, "tcp_ece_flag", F::T_ECE_FLAG, M::SET_BIT, {0, 0}},
    {48, "tcp_cwr_flag", F::T_CWR_FLAG, M::SET_BIT, {0, 0}},
    {49, "udp_zero_checksum", F::U_ZERO_CHECKSUM, M::SET_BIT, {0, 0}},
}};
}  // namespace detail

inline const std::array<ChannelSpec, kChannelCount>& catalog() {
  return detail::kCatalog;
}

inline const ChannelSpec& channel(ChannelId id) { return catalog()[id.index()]; }

// Reads only the header; the channel hint is never consulted.
inline int decode(const ChannelSpec& c, const Packet& p) {
  const std::uint32_t v = p.get(c.field);
  switch (c.mode) {
    case EncodingMode::SET_BIT: return (v >> c.params.a) & 1u;
    case EncodingMode::VALUE_MATCH: return v == c.params.a ? 1 : 0;
    case EncodingMode::LSB_MODULATE: return v & 1u;
    case EncodingMode::RANGE_SELECT:
      return (v >= c.params.a && v <= c.params.b) ? 1 : 0;
  }
  return 0;
}

inline Packet encode(const ChannelSpec& c, const Packet& p, int bit) {
  const std::uint32_t v = p.get(c.field);
  const std::uint32_t def = default_value(c.field);
  switch (c.mode) {
    case EncodingMode::SET_BIT: {
      const std::uint32_t mask = std::uint32_t{1} << c.params.a;
      return p.with(c.field, bit ? (v | mask) : (v & ~mask));
    }
    case EncodingMode::VALUE_MATCH:
      if (bit) return p.with(c.field, c.params.a);
      return v == c.params.a ? p.with(c.field, def) : p;
    case EncodingMode::LSB_MODULATE:
      return p.with(c.field, bit ? (v | 1u) : (v & ~1u));
    case EncodingMode::RANGE_SELECT:
      if (bit) return decode(c, p) ? p : p.with(c.field, c.params.a);
      return decode(c, p) ? p.with(c.field, def) : p;
  }
  return p;
}

// id,name,field,mode,params
inline std::string catalog_csv() {
  std::string out = "id,name,field,mode,params\n";
  for (const auto& c : catalog()) {
    std::string params;
    switch (c.mode) {
      case EncodingMode::SET_BIT: params = "bit=" + std::to_string(c.params.a); break;
      case EncodingMode::VALUE_MATCH: params = "value=" + std::to_string(c.params.a); break;
      case EncodingMode::LSB_MODULATE: params = "-"; break;
      case EncodingMode::RANGE_SELECT:
        params = "lo=" + std::to_string(c.params.a) + ";hi=" + std::to_string(c.params.b);
        break;
    }
    out += std::to_string(c.index) + "," + std::string(c.name) + "," +
           std::string(field_info(c.field).name) + "," +
           std::string(to_string(c.mode)) + "," + params + "\n";
  }
  return out;
}

}  // namespace dynwarden
