#pragma once
// Dump scan pass: keep exactly the entities that are instances of the
// class closure, harvest their facts, and collect the labels needed by
// the dataset writers. Label resolution is a second pass restricted to
// still-needed ids, which bounds memory by referenced-id count rather
// than dump entity count.

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "wikisub/entity.hpp"
#include "wikisub/hierarchy.hpp"
#include "wikisub/ids.hpp"
#include "wikisub/parallel.hpp"

namespace wikisub {

enum class LabelsMode : std::uint8_t { en_only, en_fallback_any };

struct LabelTable {
  std::unordered_map<EntityId, std::string> entity_labels;
  std::unordered_map<PropertyId, std::string> relation_labels;
};

struct SkipCounters {
  std::array<std::uint64_t, static_cast<std::size_t>(SkipReason::count_)> by_reason{};

  void add(SkipReason r) { ++by_reason[static_cast<std::size_t>(r)]; }
  void merge(const SkipCounters& o) {
    for (std::size_t i = 0; i < by_reason.size(); ++i)
      by_reason[i] += o.by_reason[i];
  }
  std::uint64_t total() const {
    std::uint64_t t = 0;
    for (auto v : by_reason) t += v;
    return t;
  }
};

struct ScanResult {
  std::unordered_set<EntityId> nodes;
  std::vector<Fact> facts;  // sorted, deduplicated
  LabelTable labels;        // nodes + closure classes seen during the pass
  SkipCounters skips;
  std::uint64_t lines_read = 0;
  std::uint64_t entities_parsed = 0;
};

// English label when present, else (in fallback mode) the label of the
// lexicographically smallest language code, so the choice is
// deterministic for a given record.
inline std::optional<std::string> pick_label(const EntityRecord& rec,
                                             LabelsMode mode) {
  if (auto it = rec.labels.find("en"); it != rec.labels.end()) return it->second;
  if (mode == LabelsMode::en_fallback_any && !rec.labels.empty())
    return rec.labels.begin()->second;  // std::map iterates in key order
  return std::nullopt;
}

namespace detail {

struct ExtractLocal {
  const ClassClosure* closure = nullptr;
  LabelsMode mode = LabelsMode::en_only;
  ScanResult out;

  void on_line(const std::string& line) {
    ++out.lines_read;
    auto outcome = parse_entity_line(line);
    if (auto* skip = std::get_if<Skip>(&outcome)) {
      out.skips.add(skip->reason);
      return;
    }
    auto* rec = std::get_if<EntityRecord>(&outcome);
    if (!rec) return;  // StreamEnd
    ++out.entities_parsed;
    if (rec->is_property) return;

    const EntityId id = rec->entity_id();
    bool is_node = false;
    for (const Claim& c : rec->claims)
      if (c.property == kInstanceOf && c.rank != ClaimRank::deprecated &&
          closure->contains(c.target)) {
        is_node = true;
        break;
      }

    if (is_node) {
      out.nodes.insert(id);
      for (const Claim& c : rec->claims)
        if (c.rank != ClaimRank::deprecated)
          out.facts.push_back(Fact{id, c.property, c.target});
    }
    if (is_node || closure->contains(id))
      if (auto label = pick_label(*rec, mode))
        out.labels.entity_labels.emplace(id, std::move(*label));
  }
};

}  // namespace detail

inline ScanResult scan_dump(const DumpSource& src, const ClassClosure& closure,
                            unsigned workers = 1,
                            LabelsMode mode = LabelsMode::en_only) {
  auto locals = parallel_scan(src, workers, [&] {
    detail::ExtractLocal local;
    local.closure = &closure;
    local.mode = mode;
    return local;
  });

  ScanResult merged;
  for (auto& s : locals) {
    auto& l = s.out;
    merged.lines_read += l.lines_read;
    merged.entities_parsed += l.entities_parsed;
    merged.skips.merge(l.skips);
    merged.nodes.merge(l.nodes);
    merged.facts.insert(merged.facts.end(), l.facts.begin(), l.facts.end());
    // Labels for one id are identical across workers, first writer wins.
    merged.labels.entity_labels.merge(l.labels.entity_labels);
  }
  std::sort(merged.facts.begin(), merged.facts.end());
  merged.facts.erase(std::unique(merged.facts.begin(), merged.facts.end()),
                     merged.facts.end());
  return merged;
}

struct LabelResolution {
  std::uint64_t fallbacks = 0;     // ids left with their canonical id string
  bool second_pass_run = false;
};

// Second pass: fill labels for every referenced id that pass one missed.
// Skipped entirely when nothing is missing. Any id still unlabeled after
// the pass gets its canonical id string.
inline LabelResolution resolve_labels(
    const DumpSource& src, const std::unordered_set<EntityId>& needed_entities,
    const std::unordered_set<PropertyId>& needed_relations, LabelTable& table,
    unsigned workers = 1, LabelsMode mode = LabelsMode::en_only) {
  std::unordered_set<EntityId> missing_entities;
  for (EntityId id : needed_entities)
    if (!table.entity_labels.count(id)) missing_entities.insert(id);
  std::unordered_set<PropertyId> missing_relations;
  for (PropertyId id : needed_relations)
    if (!table.relation_labels.count(id)) missing_relations.insert(id);

  LabelResolution res;
  if (!missing_entities.empty() || !missing_relations.empty()) {
    res.second_pass_run = true;
    struct Local {
      const std::unordered_set<EntityId>* want_e;
      const std::unordered_set<PropertyId>* want_p;
      LabelsMode mode;
      LabelTable found;

      void on_line(const std::string& line) {
        auto outcome = parse_entity_line(line);
        auto* rec = std::get_if<EntityRecord>(&outcome);
        if (!rec) return;
        if (rec->is_property) {
          if (!want_p->count(rec->property_id())) return;
          if (auto label = pick_label(*rec, mode))
            found.relation_labels.emplace(rec->property_id(), std::move(*label));
        } else {
          if (!want_e->count(rec->entity_id())) return;
          if (auto label = pick_label(*rec, mode))
            found.entity_labels.emplace(rec->entity_id(), std::move(*label));
        }
      }
    };
    auto locals = parallel_scan(src, workers, [&] {
      return Local{&missing_entities, &missing_relations, mode, {}};
    });
    for (auto& l : locals) {
      table.entity_labels.merge(l.found.entity_labels);
      table.relation_labels.merge(l.found.relation_labels);
    }
  }

  for (EntityId id : needed_entities)
    if (table.entity_labels.emplace(id, id.str()).second) ++res.fallbacks;
  for (PropertyId id : needed_relations)
    if (table.relation_labels.emplace(id, id.str()).second) ++res.fallbacks;
  return res;
}

}  // namespace wikisub
