#pragma once

#include <bitset>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "channels.hpp"
#include "packet.hpp"

namespace dynwarden {

inline constexpr std::size_t kRuleCount = kChannelCount;  // |R_T|

class RuleId {
 public:
  constexpr RuleId() = default;
  constexpr explicit RuleId(std::size_t index) : index_(index) {
    if (index >= kRuleCount) throw std::out_of_range("RuleId out of range");
  }
  constexpr std::size_t index() const { return index_; }
  constexpr auto operator<=>(const RuleId&) const = default;

 private:
  std::size_t index_ = 0;
};

// One rule per channel, same index.
constexpr RuleId rule_for_channel(ChannelId c) { return RuleId(c.index()); }

// Matches packets carrying its paired channel's signal; the action writes the
// field back to the schema default.
class NormalizationRule {
 public:
  explicit NormalizationRule(RuleId id) : id_(id), spec_(&catalog()[id.index()]) {}

  RuleId id() const { return id_; }
  FieldId field() const { return spec_->field; }

  bool matches(const Packet& p) const { return decode(*spec_, p) == 1; }

  Packet apply(const Packet& p) const {
    return p.with(spec_->field, default_value(spec_->field));
  }

 private:
  RuleId id_;
  const ChannelSpec* spec_;
};

inline NormalizationRule rule(RuleId id) { return NormalizationRule(id); }

class RuleSet {
 public:
  RuleSet() = default;

  static RuleSet all() {
    RuleSet rs;
    rs.bits_.set();
    return rs;
  }

  static RuleSet of(const std::vector<std::size_t>& indices) {
    RuleSet rs;
    for (auto i : indices) rs.insert(RuleId(i));
    return rs;
  }

  void insert(RuleId r) { bits_.set(r.index()); }
  void erase(RuleId r) { bits_.reset(r.index()); }
  bool contains(RuleId r) const { return bits_.test(r.index()); }
  std::size_t size() const { return bits_.count(); }
  bool empty() const { return bits_.none(); }

  std::vector<RuleId> members() const {
    std::vector<RuleId> out;
    for (std::size_t i = 0; i < kRuleCount; ++i)
      if (bits_.test(i)) out.emplace_back(i);
    return out;
  }

  bool operator==(const RuleSet&) const = default;

 private:
  std::bitset<kRuleCount> bits_;
};

enum class Disposition : std::uint8_t { NORMALIZED, FORWARDED };

struct DispositionCounters {
  std::uint64_t normalized = 0;
  std::uint64_t forwarded = 0;
  std::uint64_t rule_evaluations = 0;  // CPU proxy

  std::uint64_t processed() const { return normalized + forwarded; }
  bool operator==(const DispositionCounters&) const = default;
};

struct RulesetOutcome {
  Packet packet;
  Disposition disposition;
};

// Every active rule is evaluated, even after a match, so the evaluation
// count is exactly |active| per packet.
inline RulesetOutcome apply_ruleset(const RuleSet& active, const Packet& p,
                                    DispositionCounters& ctr) {
  Packet out = p;
  bool hit = false;
  for (std::size_t i = 0; i < kRuleCount; ++i) {
    const RuleId id(i);
    if (!active.contains(id)) continue;
    ++ctr.rule_evaluations;
    const NormalizationRule r(id);
    if (r.matches(p)) {
      out = r.apply(out);
      hit = true;
    }
  }
  if (hit) {
    ++ctr.normalized;
    return {std::move(out), Disposition::NORMALIZED};
  }
  ++ctr.forwarded;
  return {std::move(out), Disposition::FORWARDED};
}

}  // namespace dynwarden
