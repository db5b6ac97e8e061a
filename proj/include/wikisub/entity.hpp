#pragma once
// One parsed line of the Wikidata JSON entity dump, and the line parser.
//
// The dump body is a JSON array spread over physical lines: the first line
// is "[", each entity document sits on its own line with a trailing comma,
// and the last line is "]". parse_entity_line never throws: every input
// maps to a record, a counted skip, or the end-of-stream marker.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "wikisub/ids.hpp"

namespace wikisub {

enum class ClaimRank : std::uint8_t { preferred, normal, deprecated };

inline std::string_view rank_name(ClaimRank r) {
  switch (r) {
    case ClaimRank::preferred: return "preferred";
    case ClaimRank::deprecated: return "deprecated";
    default: return "normal";
  }
}

// Entity-valued statement. String/time/quantity values are dropped at
// parse time; they have no home in the output format.
struct Claim {
  PropertyId property;
  EntityId target;
  ClaimRank rank = ClaimRank::normal;

  auto operator<=>(const Claim&) const = default;
};

struct EntityRecord {
  bool is_property = false;        // true for PN documents
  std::uint64_t id_num = 0;        // numeric part of the Q/P id
  std::map<std::string, std::string> labels;  // language code -> label
  std::vector<Claim> claims;       // sorted, no duplicates

  EntityId entity_id() const { return EntityId{id_num}; }
  PropertyId property_id() const { return PropertyId{id_num}; }

  bool operator==(const EntityRecord&) const = default;
};

enum class SkipReason : std::uint8_t {
  framing,           // "[" opener, blank line
  json_error,        // line is not a JSON object
  redirect,
  unsupported_type,  // lexeme, mediainfo, anything not item/property
  bad_id,            // id field missing or not QN/PN
  count_,            // sentinel
};

inline std::string_view skip_reason_name(SkipReason r) {
  static constexpr std::array<std::string_view, 5> names = {
      "framing", "json_error", "redirect", "unsupported_type", "bad_id"};
  return names[static_cast<std::size_t>(r)];
}

struct Skip {
  SkipReason reason;
};

struct StreamEnd {};

using ParseOutcome = std::variant<EntityRecord, Skip, StreamEnd>;

namespace detail {

inline std::string_view trim_line(std::string_view line) {
  while (!line.empty() && (line.back() == '\n' || line.back() == '\r' ||
                           line.back() == ' ' || line.back() == '\t'))
    line.remove_suffix(1);
  // Body lines carry a trailing comma per dump framing.
  if (!line.empty() && line.back() == ',') line.remove_suffix(1);
  while (!line.empty() && (line.front() == ' ' || line.front() == '\t'))
    line.remove_prefix(1);
  return line;
}

}  // namespace detail

inline ParseOutcome parse_entity_line(std::string_view raw) {
  using nlohmann::json;

  std::string_view line = detail::trim_line(raw);
  if (line.empty() || line == "[") return Skip{SkipReason::framing};
  if (line == "]") return StreamEnd{};

  json doc = json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded() || !doc.is_object())
    return Skip{SkipReason::json_error};
  if (doc.contains("redirect")) return Skip{SkipReason::redirect};

  const auto type_it = doc.find("type");
  const std::string type =
      type_it != doc.end() && type_it->is_string() ? type_it->get<std::string>() : "";
  if (type != "item" && type != "property")
    return Skip{SkipReason::unsupported_type};

  const auto id_it = doc.find("id");
  if (id_it == doc.end() || !id_it->is_string())
    return Skip{SkipReason::bad_id};
  const std::string id_str = id_it->get<std::string>();

  EntityRecord rec;
  if (type == "item") {
    auto id = EntityId::parse(id_str);
    if (!id) return Skip{SkipReason::bad_id};
    rec.id_num = id->num;
  } else {
    auto id = PropertyId::parse(id_str);
    if (!id) return Skip{SkipReason::bad_id};
    rec.is_property = true;
    rec.id_num = id->num;
  }

  if (auto labels = doc.find("labels"); labels != doc.end() && labels->is_object()) {
    for (const auto& [lang, obj] : labels->items()) {
      if (!obj.is_object()) continue;
      if (auto v = obj.find("value"); v != obj.end() && v->is_string())
        rec.labels.emplace(lang, v->get<std::string>());
    }
  }

  if (auto claims = doc.find("claims"); claims != doc.end() && claims->is_object()) {
    for (const auto& [pid_str, statements] : claims->items()) {
      auto pid = PropertyId::parse(pid_str);
      if (!pid || !statements.is_array()) continue;
      for (const auto& st : statements) {
        if (!st.is_object()) continue;
        const auto snak = st.find("mainsnak");
        if (snak == st.end() || !snak->is_object()) continue;
        if (snak->value("snaktype", "") != std::string("value")) continue;
        const auto dv = snak->find("datavalue");
        if (dv == snak->end() || !dv->is_object()) continue;
        if (dv->value("type", "") != std::string("wikibase-entityid")) continue;
        const auto val = dv->find("value");
        if (val == dv->end() || !val->is_object()) continue;
        if (val->value("entity-type", "") != std::string("item")) continue;

        EntityId target{};
        if (auto n = val->find("numeric-id"); n != val->end() && n->is_number_unsigned()) {
          target.num = n->get<std::uint64_t>();
        } else if (auto s = val->find("id"); s != val->end() && s->is_string()) {
          auto q = EntityId::parse(s->get<std::string>());
          if (!q) continue;
          target = *q;
        } else {
          continue;
        }
        if (target.num == 0) continue;

        ClaimRank rank = ClaimRank::normal;
        const std::string rank_str = st.value("rank", "normal");
        if (rank_str == "preferred") rank = ClaimRank::preferred;
        else if (rank_str == "deprecated") rank = ClaimRank::deprecated;

        rec.claims.push_back(Claim{*pid, target, rank});
      }
    }
  }

  std::sort(rec.claims.begin(), rec.claims.end());
  rec.claims.erase(std::unique(rec.claims.begin(), rec.claims.end()),
                   rec.claims.end());
  return rec;
}

}  // namespace wikisub
