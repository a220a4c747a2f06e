#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "sim_time.hpp"

namespace dynwarden {

// Synthetic header schema. Only the fields that covert channels touch are
// modeled; there is no byte-level wire layout.
enum class FieldId : std::uint8_t {
  V4_RESERVED_FLAG,
  V4_DF_FLAG,
  V4_MF_FLAG,
  V4_TOS,
  V4_ECN,
  V4_IDENTIFICATION,
  V4_TTL,
  V4_FRAG_OFFSET,
  V4_OPTION_PADDING,
  T_RESERVED,
  T_URGENT_PTR,
  T_URG_FLAG,
  T_WINDOW,
  T_SEQ_LSB,
  T_ACK_LSB,
  T_ECE_FLAG,
  T_CWR_FLAG,
  T_TS_ECHO_LSB,
  T_OPTION_PADDING,
  U_ZERO_CHECKSUM,
  U_LENGTH_PAD,
  U_SRC_PORT_LSB,
  I_ECHO_ID,
  I_ECHO_SEQ,
  I_CODE,
};

inline constexpr std::size_t kFieldCount = 25;

struct FieldInfo {
  FieldId id;
  std::string_view name;
  std::uint8_t width;     // bits, in [1, 32]
  std::uint32_t initial;  // canonical (normalized) value
};

// Order matches FieldId. Defaults are the values a normalizer writes back.
inline constexpr std::array<FieldInfo, kFieldCount> kSchema{{
    {FieldId::V4_RESERVED_FLAG, "V4_RESERVED_FLAG", 1, 0},
    {FieldId::V4_DF_FLAG, "V4_DF_FLAG", 1, 0},
    {FieldId::V4_MF_FLAG, "V4_MF_FLAG", 1, 0},
    {FieldId::V4_TOS, "V4_TOS", 8, 0},
    {FieldId::V4_ECN, "V4_ECN", 2, 0},
    {FieldId::V4_IDENTIFICATION, "V4_IDENTIFICATION", 16, 0},
    {FieldId::V4_TTL, "V4_TTL", 8, 64},
    {FieldId::V4_FRAG_OFFSET, "V4_FRAG_OFFSET", 13, 0},
    {FieldId::V4_OPTION_PADDING, "V4_OPTION_PADDING", 8, 0},
    {FieldId::T_RESERVED, "T_RESERVED", 4, 0},
    {FieldId::T_URGENT_PTR, "T_URGENT_PTR", 16, 0},
    {FieldId::T_URG_FLAG, "T_URG_FLAG", 1, 0},
    {FieldId::T_WINDOW, "T_WINDOW", 16, 8192},
    {FieldId::T_SEQ_LSB, "T_SEQ_LSB", 8, 0},
    {FieldId::T_ACK_LSB, "T_ACK_LSB", 8, 0},
    {FieldId::T_ECE_FLAG, "T_ECE_FLAG", 1, 0},
    {FieldId::T_CWR_FLAG, "T_CWR_FLAG", 1, 0},
    {FieldId::T_TS_ECHO_LSB, "T_TS_ECHO_LSB", 8, 0},
    {FieldId::T_OPTION_PADDING, "T_OPTION_PADDING", 8, 0},
    {FieldId::U_ZERO_CHECKSUM, "U_ZERO_CHECKSUM", 1, 0},
    {FieldId::U_LENGTH_PAD, "U_LENGTH_PAD", 8, 0},
    {FieldId::U_SRC_PORT_LSB, "U_SRC_PORT_LSB", 8, 0x40},
    {FieldId::I_ECHO_ID, "I_ECHO_ID", 16, 0},
    {FieldId::I_ECHO_SEQ, "I_ECHO_SEQ", 16, 0},
    {FieldId::I_CODE, "I_CODE", 8, 0},
}};

constexpr std::size_t index_of(FieldId f) { return static_cast<std::size_t>(f); }
constexpr const FieldInfo& field_info(FieldId f) { return kSchema[index_of(f)]; }
constexpr unsigned width(FieldId f) { return field_info(f).width; }
constexpr std::uint32_t default_value(FieldId f) { return field_info(f).initial; }

// 2^width - 1, computed in 64 bits so a 32-bit field does not overflow.
constexpr std::uint64_t max_value(FieldId f) {
  return (std::uint64_t{1} << width(f)) - 1;
}

class WidthOverflow : public std::out_of_range {
 public:
  WidthOverflow(FieldId f, std::uint64_t v)
      : std::out_of_range("value " + std::to_string(v) + " does not fit " +
                          std::string(field_info(f).name) + " (" +
                          std::to_string(width(f)) + " bits)"),
        field(f),
        value(v) {}
  FieldId field;
  std::uint64_t value;
};

enum class PacketKind : std::uint8_t { PROBE, COM, LEGIT };

constexpr std::string_view to_string(PacketKind k) {
  switch (k) {
    case PacketKind::PROBE: return "PROBE";
    case PacketKind::COM: return "COM";
    case PacketKind::LEGIT: return "LEGIT";
  }
  return "?";
}

using Header = std::array<std::uint32_t, kFieldCount>;

// Immutable value; "mutators" return modified copies.
class Packet {
 public:
  Packet(PacketKind kind, std::uint64_t seq, SimTime send_time = {})
      : kind_(kind), seq_(seq), send_time_(send_time) {
    for (const auto& f : kSchema) header_[index_of(f.id)] = f.initial;
  }

  PacketKind kind() const { return kind_; }
  std::uint64_t seq() const { return seq_; }
  SimTime send_time() const { return send_time_; }
  const Header& header() const { return header_; }

  std::uint32_t get(FieldId f) const { return header_[index_of(f)]; }

  [[nodiscard]] Packet with(FieldId f, std::uint64_t v) const {
    if (v > max_value(f)) throw WidthOverflow(f, v);
    Packet copy = *this;
    copy.header_[index_of(f)] = static_cast<std::uint32_t>(v);
    return copy;
  }

  [[nodiscard]] Packet sent_at(SimTime t) const {
    Packet copy = *this;
    copy.send_time_ = t;
    return copy;
  }

  // Trace/debug bookkeeping. Deliberately absent from every interface the
  // warden and the receiver's decoders accept.
  std::optional<std::size_t> channel_hint() const { return channel_hint_; }
  [[nodiscard]] Packet with_channel_hint(std::size_t channel) const {
    Packet copy = *this;
    copy.channel_hint_ = channel;
    return copy;
  }

  bool same_header(const Packet& o) const { return header_ == o.header_; }

  friend bool operator==(const Packet&, const Packet&) = default;

 private:
  PacketKind kind_;
  std::uint64_t seq_;
  SimTime send_time_;
  std::optional<std::size_t> channel_hint_;
  Header header_{};
};

inline Packet default_packet(PacketKind kind, std::uint64_t seq) {
  return Packet(kind, seq);
}

inline Packet set_field(const Packet& p, FieldId f, std::uint64_t v) {
  return p.with(f, v);
}

inline std::uint32_t get_field(const Packet& p, FieldId f) { return p.get(f); }

// seq,kind,send_time,field=value,...  Only non-default fields are listed.
inline std::string to_trace_line(const Packet& p) {
  std::string line = std::to_string(p.seq()) + "," +
                     std::string(to_string(p.kind())) + "," +
                     format_seconds(p.send_time());
  for (const auto& f : kSchema) {
    const auto v = p.get(f.id);
    if (v != f.initial) {
      line += ",";
      line += f.name;
      line += "=" + std::to_string(v);
    }
  }
  return line;
}

}  // namespace dynwarden
