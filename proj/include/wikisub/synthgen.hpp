#pragma once
// Synthetic mini-dumps with known ground truth. Generation is a pure
// function of SynthSpec: one RNG consumed in a fixed order, deterministic
// container iteration only. Test infrastructure, not a data model of the
// real dump's statistics.

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "wikisub/entity.hpp"
#include "wikisub/ids.hpp"

namespace wikisub {

enum class HierarchyShape : std::uint8_t { chain, tree, dag_with_cycles };

struct SynthSpec {
  std::uint64_t seed = 0;
  std::uint32_t n_classes = 5;      // topic included
  HierarchyShape shape = HierarchyShape::tree;
  std::uint32_t n_instances = 50;   // on-topic entities
  std::uint32_t n_offtopic = 50;    // entities instancing unrelated classes
  std::uint32_t facts_min = 1;      // random claims per on-topic entity
  std::uint32_t facts_max = 4;
  double english_label_rate = 1.0;  // remainder get a French label only
};

struct GroundTruth {
  EntityId topic;
  std::set<EntityId> closure;
  std::set<EntityId> nodes;
  std::vector<Fact> edges;       // sorted, deduplicated
  std::vector<Fact> attributes;  // sorted, deduplicated
  // Planted English labels; ids absent here resolve to their canonical
  // id string under --labels en.
  std::map<EntityId, std::string> entity_labels_en;
  std::map<PropertyId, std::string> relation_labels_en;
  std::uint64_t line_count = 0;       // framing included
  std::uint64_t expected_fallbacks = 0;  // referenced ids without en label
};

struct SynthDump {
  std::string bytes;  // full dump: "[", entity lines with trailing commas, "]"
  GroundTruth truth;
};

// Serializes a record in the dump's JSON document schema. Inverse of
// parse_entity_line for records the generator produces.
inline std::string serialize_record(const EntityRecord& rec) {
  using nlohmann::json;
  json doc;
  doc["type"] = rec.is_property ? "property" : "item";
  doc["id"] = rec.is_property ? rec.property_id().str() : rec.entity_id().str();
  doc["labels"] = json::object();
  for (const auto& [lang, value] : rec.labels)
    doc["labels"][lang] = {{"language", lang}, {"value", value}};
  doc["claims"] = json::object();
  for (const Claim& c : rec.claims) {
    json st = {
        {"mainsnak",
         {{"snaktype", "value"},
          {"property", c.property.str()},
          {"datavalue",
           {{"type", "wikibase-entityid"},
            {"value",
             {{"entity-type", "item"}, {"numeric-id", c.target.num}}}}}}},
        {"rank", std::string(rank_name(c.rank))}};
    doc["claims"][c.property.str()].push_back(std::move(st));
  }
  return doc.dump();
}

namespace synth_detail {

// Id ranges keep the categories disjoint.
inline constexpr std::uint64_t kClassBase = 1'000'000;
inline constexpr std::uint64_t kOfftopicClassBase = 2'000'000;
inline constexpr std::uint64_t kInstanceBase = 10'000'000;
inline constexpr std::uint64_t kOfftopicBase = 20'000'000;

inline const std::vector<PropertyId>& fact_property_pool() {
  static const std::vector<PropertyId> pool = {
      PropertyId{22}, PropertyId{26}, PropertyId{40}, PropertyId{101},
      PropertyId{155}};
  return pool;
}

}  // namespace synth_detail

inline SynthDump generate_dump(const SynthSpec& spec) {
  using namespace synth_detail;
  std::mt19937_64 rng(spec.seed);
  auto pick = [&](std::uint64_t n) { return n == 0 ? 0 : rng() % n; };
  auto chance = [&](double p) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
  };

  SynthDump out;
  GroundTruth& gt = out.truth;
  gt.topic = EntityId{kClassBase};

  std::vector<EntityRecord> records;

  // --- classes and the subclass hierarchy -------------------------------
  std::vector<EntityId> classes;
  for (std::uint32_t i = 0; i < spec.n_classes; ++i)
    classes.push_back(EntityId{kClassBase + i});
  for (EntityId c : classes) gt.closure.insert(c);

  std::vector<std::pair<std::uint32_t, std::uint32_t>> class_edges;  // child->parent
  for (std::uint32_t i = 1; i < spec.n_classes; ++i) {
    switch (spec.shape) {
      case HierarchyShape::chain:
        class_edges.emplace_back(i, i - 1);
        break;
      case HierarchyShape::tree:
        class_edges.emplace_back(i, (i - 1) / 2);
        break;
      case HierarchyShape::dag_with_cycles:
        class_edges.emplace_back(i, (i - 1) / 2);
        if (i >= 2 && i % 3 == 0)  // extra diamond edge
          class_edges.emplace_back(i, static_cast<std::uint32_t>(pick(i - 1)));
        break;
    }
  }
  if (spec.shape == HierarchyShape::dag_with_cycles && spec.n_classes > 1)
    // Back edge from the topic makes the hierarchy cyclic.
    class_edges.emplace_back(0, spec.n_classes - 1);

  std::map<std::uint32_t, std::vector<std::uint32_t>> parents_of;
  for (auto [child, parent] : class_edges) parents_of[child].push_back(parent);

  std::vector<EntityId> offtopic_classes = {EntityId{kOfftopicClassBase},
                                            EntityId{kOfftopicClassBase + 1}};

  for (std::uint32_t i = 0; i < spec.n_classes; ++i) {
    EntityRecord rec;
    rec.id_num = classes[i].num;
    if (auto it = parents_of.find(i); it != parents_of.end())
      for (std::uint32_t p : it->second)
        rec.claims.push_back(Claim{kSubclassOf, classes[p], ClaimRank::normal});
    records.push_back(std::move(rec));
  }
  for (EntityId c : offtopic_classes) {
    EntityRecord rec;
    rec.id_num = c.num;
    records.push_back(std::move(rec));
  }

  // --- instances ---------------------------------------------------------
  std::vector<EntityId> on_topic, off_topic;
  for (std::uint32_t i = 0; i < spec.n_instances; ++i)
    on_topic.push_back(EntityId{kInstanceBase + i});
  for (std::uint32_t i = 0; i < spec.n_offtopic; ++i)
    off_topic.push_back(EntityId{kOfftopicBase + i});
  for (EntityId id : on_topic) gt.nodes.insert(id);

  std::vector<EntityId> all_targets;  // pool for random fact tails
  all_targets.insert(all_targets.end(), on_topic.begin(), on_topic.end());
  all_targets.insert(all_targets.end(), off_topic.begin(), off_topic.end());
  all_targets.insert(all_targets.end(), classes.begin(), classes.end());

  std::set<Fact> fact_set;
  std::set<PropertyId> used_relations = {kInstanceOf};

  for (EntityId id : on_topic) {
    EntityRecord rec;
    rec.id_num = id.num;

    EntityId cls = classes[pick(classes.size())];
    rec.claims.push_back(Claim{kInstanceOf, cls, ClaimRank::normal});
    fact_set.insert(Fact{id, kInstanceOf, cls});
    if (chance(0.1)) {  // second P31, outside the closure
      EntityId off = offtopic_classes[pick(offtopic_classes.size())];
      rec.claims.push_back(Claim{kInstanceOf, off, ClaimRank::normal});
      fact_set.insert(Fact{id, kInstanceOf, off});
    }

    std::uint32_t k = spec.facts_min;
    if (spec.facts_max > spec.facts_min)
      k += static_cast<std::uint32_t>(pick(spec.facts_max - spec.facts_min + 1));
    for (std::uint32_t f = 0; f < k; ++f) {
      PropertyId prop = fact_property_pool()[pick(fact_property_pool().size())];
      EntityId target =
          chance(0.02) ? id : all_targets[pick(all_targets.size())];  // self-loop
      ClaimRank rank = chance(0.05) ? ClaimRank::preferred : ClaimRank::normal;
      rec.claims.push_back(Claim{prop, target, rank});
      fact_set.insert(Fact{id, prop, target});
      used_relations.insert(prop);
    }
    if (chance(0.1)) {  // deprecated claim, must not surface as a fact
      PropertyId prop = fact_property_pool()[pick(fact_property_pool().size())];
      EntityId target = all_targets[pick(all_targets.size())];
      rec.claims.push_back(Claim{prop, target, ClaimRank::deprecated});
    }
    records.push_back(std::move(rec));
  }

  for (EntityId id : off_topic) {
    EntityRecord rec;
    rec.id_num = id.num;
    rec.claims.push_back(Claim{kInstanceOf,
                               offtopic_classes[pick(offtopic_classes.size())],
                               ClaimRank::normal});
    if (chance(0.1))  // deprecated P31 into the closure must not select it
      rec.claims.push_back(
          Claim{kInstanceOf, classes[pick(classes.size())], ClaimRank::deprecated});
    if (chance(0.3)) {  // off-topic entities have claims too, never harvested
      PropertyId prop = fact_property_pool()[pick(fact_property_pool().size())];
      rec.claims.push_back(
          Claim{prop, all_targets[pick(all_targets.size())], ClaimRank::normal});
    }
    records.push_back(std::move(rec));
  }

  // --- property documents -------------------------------------------------
  for (PropertyId pid : used_relations) {
    EntityRecord rec;
    rec.is_property = true;
    rec.id_num = pid.num;
    records.push_back(std::move(rec));
  }

  // --- labels -------------------------------------------------------------
  for (EntityRecord& rec : records) {
    std::string name = (rec.is_property ? "rel " : "thing ") +
                       std::to_string(rec.id_num);
    if (chance(spec.english_label_rate))
      rec.labels.emplace("en", name);
    else
      rec.labels.emplace("fr", "truc " + std::to_string(rec.id_num));
  }

  // --- ground truth partition and labels ----------------------------------
  for (const Fact& f : fact_set)
    (gt.nodes.count(f.tail) ? gt.edges : gt.attributes).push_back(f);

  std::set<EntityId> needed_entities(gt.nodes.begin(), gt.nodes.end());
  for (const Fact& f : fact_set) {
    needed_entities.insert(f.head);
    needed_entities.insert(f.tail);
  }
  std::map<EntityId, std::string> en_by_entity;
  std::map<PropertyId, std::string> en_by_prop;
  for (const EntityRecord& rec : records) {
    auto it = rec.labels.find("en");
    if (it == rec.labels.end()) continue;
    if (rec.is_property)
      en_by_prop.emplace(rec.property_id(), it->second);
    else
      en_by_entity.emplace(rec.entity_id(), it->second);
  }
  for (EntityId id : needed_entities) {
    if (auto it = en_by_entity.find(id); it != en_by_entity.end())
      gt.entity_labels_en.emplace(id, it->second);
    else
      ++gt.expected_fallbacks;
  }
  for (PropertyId pid : used_relations) {
    if (auto it = en_by_prop.find(pid); it != en_by_prop.end())
      gt.relation_labels_en.emplace(pid, it->second);
    else
      ++gt.expected_fallbacks;
  }

  // --- serialize, in shuffled line order ----------------------------------
  std::vector<std::size_t> order(records.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (std::size_t i = order.size(); i > 1; --i)
    std::swap(order[i - 1], order[pick(i)]);

  out.bytes = "[\n";
  for (std::size_t idx : order) {
    out.bytes += serialize_record(records[idx]);
    out.bytes += ",\n";
  }
  out.bytes += "]\n";
  gt.line_count = records.size() + 2;
  return out;
}

// Sidecar schema for generated dumps; consumed by tests and the oracle CLI.
inline nlohmann::json ground_truth_json(const GroundTruth& gt) {
  nlohmann::json j;
  j["topic"] = gt.topic.str();
  j["line_count"] = gt.line_count;
  j["expected_fallbacks"] = gt.expected_fallbacks;
  auto ids = [](const auto& set) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& id : set) arr.push_back(id.str());
    return arr;
  };
  j["closure"] = ids(gt.closure);
  j["nodes"] = ids(gt.nodes);
  auto facts = [](const std::vector<Fact>& fs) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Fact& f : fs)
      arr.push_back({f.head.str(), f.relation.str(), f.tail.str()});
    return arr;
  };
  j["edges"] = facts(gt.edges);
  j["attributes"] = facts(gt.attributes);
  nlohmann::json el = nlohmann::json::object();
  for (const auto& [id, label] : gt.entity_labels_en) el[id.str()] = label;
  j["entity_labels_en"] = std::move(el);
  nlohmann::json rl = nlohmann::json::object();
  for (const auto& [id, label] : gt.relation_labels_en) rl[id.str()] = label;
  j["relation_labels_en"] = std::move(rl);
  return j;
}

}  // namespace wikisub
