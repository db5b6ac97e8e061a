#pragma once
// Typed Wikidata identifiers (QIDs, PIDs) and the directed fact triple.

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace wikisub {

struct EntityId {
  std::uint64_t num = 0;

  auto operator<=>(const EntityId&) const = default;

  std::string str() const { return "Q" + std::to_string(num); }

  static std::optional<EntityId> parse(std::string_view s) {
    if (s.size() < 2 || s[0] != 'Q' || s[1] == '0') return std::nullopt;
    std::uint64_t n = 0;
    for (char c : s.substr(1)) {
      if (c < '0' || c > '9') return std::nullopt;
      n = n * 10 + static_cast<std::uint64_t>(c - '0');
    }
    if (n == 0) return std::nullopt;
    return EntityId{n};
  }
};

struct PropertyId {
  std::uint64_t num = 0;

  auto operator<=>(const PropertyId&) const = default;

  std::string str() const { return "P" + std::to_string(num); }

  static std::optional<PropertyId> parse(std::string_view s) {
    if (s.size() < 2 || s[0] != 'P' || s[1] == '0') return std::nullopt;
    std::uint64_t n = 0;
    for (char c : s.substr(1)) {
      if (c < '0' || c > '9') return std::nullopt;
      n = n * 10 + static_cast<std::uint64_t>(c - '0');
    }
    if (n == 0) return std::nullopt;
    return PropertyId{n};
  }
};

inline constexpr PropertyId kInstanceOf{31};
inline constexpr PropertyId kSubclassOf{279};

// Directed (head, relation, tail) triple. Ordering is lexicographic over
// the numeric parts, which is the canonical output order before indexing.
struct Fact {
  EntityId head;
  PropertyId relation;
  EntityId tail;

  auto operator<=>(const Fact&) const = default;
};

}  // namespace wikisub

template <>
struct std::hash<wikisub::EntityId> {
  std::size_t operator()(const wikisub::EntityId& id) const noexcept {
    return std::hash<std::uint64_t>{}(id.num);
  }
};

template <>
struct std::hash<wikisub::PropertyId> {
  std::size_t operator()(const wikisub::PropertyId& id) const noexcept {
    // Salted so PN and QN with equal N land in different buckets when mixed.
    return std::hash<std::uint64_t>{}(id.num ^ 0x9e3779b97f4a7c15ull);
  }
};

template <>
struct std::hash<wikisub::Fact> {
  std::size_t operator()(const wikisub::Fact& f) const noexcept {
    std::size_t h = std::hash<std::uint64_t>{}(f.head.num);
    h = h * 31 + std::hash<std::uint64_t>{}(f.relation.num);
    h = h * 31 + std::hash<std::uint64_t>{}(f.tail.num);
    return h;
  }
};
