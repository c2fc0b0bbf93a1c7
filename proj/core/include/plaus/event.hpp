#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace plaus {

/// A subset of a world set, stored as a bitmask keyed by world index.
class Event {
 public:
  constexpr Event() = default;
  constexpr explicit Event(std::uint32_t bits) : bits_(bits) {}

  static constexpr Event singleton(std::size_t world) {
    return Event(std::uint32_t{1} << world);
  }

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool contains(std::size_t world) const { return (bits_ >> world) & 1U; }
  constexpr int count() const { return std::popcount(bits_); }

  constexpr bool subset_of(Event other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr bool disjoint_with(Event other) const { return (bits_ & other.bits_) == 0; }

  constexpr Event operator|(Event o) const { return Event(bits_ | o.bits_); }
  constexpr Event operator&(Event o) const { return Event(bits_ & o.bits_); }
  constexpr Event minus(Event o) const { return Event(bits_ & ~o.bits_); }

  constexpr auto operator<=>(const Event&) const = default;

 private:
  std::uint32_t bits_ = 0;
};

/// Ordered, named, finite set of worlds (at most 16).
class WorldSet {
 public:
  static constexpr std::size_t kMaxWorlds = 16;

  WorldSet() = default;
  explicit WorldSet(std::vector<std::string> names);
  static WorldSet numbered(std::size_t n, std::string_view prefix = "w");

  std::size_t size() const { return names_.size(); }
  /// Number of events, 2^size().
  std::size_t event_count() const { return std::size_t{1} << names_.size(); }
  const std::string& name(std::size_t i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }

  Event full() const { return Event(static_cast<std::uint32_t>(event_count() - 1)); }
  Event complement(Event e) const { return full().minus(e); }
  Event event(std::size_t bits) const { return Event(static_cast<std::uint32_t>(bits)); }

  /// Index of a world by name; throws malformed-input when unknown.
  std::size_t index_of(std::string_view name) const;

  /// "{w1,w3}" in world order.
  std::string render(Event e) const;
  /// Parses "{a,b}" (whitespace tolerated) or "{}".
  Event parse(std::string_view text) const;

  bool operator==(const WorldSet&) const = default;

 private:
  std::vector<std::string> names_;
};

}  // namespace plaus
