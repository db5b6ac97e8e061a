#pragma once
// Brute-force reference extractor: load the whole dump into memory, then
// apply the node/edge/attribute definitions literally. Shares no code
// with the pipeline's parser, scanner or closure traversal, so
// equivalence tests against it are meaningful. Intended for inputs up to
// roughly ten thousand entities.

#include <cstdint>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "wikisub/dataset.hpp"
#include "wikisub/ids.hpp"

namespace wikisub {

struct OracleResult {
  std::set<EntityId> closure;
  std::set<EntityId> nodes;
  std::vector<Fact> edges;       // sorted, deduplicated
  std::vector<Fact> attributes;  // sorted, deduplicated
  std::map<EntityId, std::string> entity_labels;    // complete, with fallback
  std::map<PropertyId, std::string> relation_labels;
  StatsReport stats;
  std::uint64_t skipped_lines = 0;
};

namespace oracle_detail {

struct Doc {
  bool is_property = false;
  std::uint64_t id = 0;
  std::map<std::string, std::string> labels;
  // (pid, qid, rank string), duplicates as they appear
  std::vector<std::tuple<std::uint64_t, std::uint64_t, std::string>> statements;
};

inline std::uint64_t id_number(const std::string& s, char prefix) {
  if (s.size() < 2 || s[0] != prefix) return 0;
  std::uint64_t n = 0;
  for (char c : s.substr(1)) {
    if (c < '0' || c > '9') return 0;
    n = n * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return n;
}

inline bool load_doc(const std::string& line, Doc& doc) {
  using nlohmann::json;
  std::string body = line;
  while (!body.empty() &&
         (body.back() == '\n' || body.back() == '\r' || body.back() == ' '))
    body.pop_back();
  if (!body.empty() && body.back() == ',') body.pop_back();
  if (body.empty() || body == "[" || body == "]") return false;

  json j = json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object() || j.contains("redirect")) return false;
  std::string type = j.value("type", "");
  std::string id = j.value("id", "");
  if (type == "item") {
    doc.is_property = false;
    doc.id = id_number(id, 'Q');
  } else if (type == "property") {
    doc.is_property = true;
    doc.id = id_number(id, 'P');
  } else {
    return false;
  }
  if (doc.id == 0) return false;

  if (j.contains("labels") && j["labels"].is_object())
    for (auto& [lang, obj] : j["labels"].items())
      if (obj.is_object() && obj.contains("value") && obj["value"].is_string())
        doc.labels[lang] = obj["value"].get<std::string>();

  if (j.contains("claims") && j["claims"].is_object()) {
    for (auto& [pid_str, sts] : j["claims"].items()) {
      std::uint64_t pid = id_number(pid_str, 'P');
      if (pid == 0 || !sts.is_array()) continue;
      for (auto& st : sts) {
        if (!st.is_object() || !st.contains("mainsnak")) continue;
        auto& snak = st["mainsnak"];
        if (!snak.is_object() || snak.value("snaktype", "") != "value") continue;
        if (!snak.contains("datavalue")) continue;
        auto& dv = snak["datavalue"];
        if (dv.value("type", "") != "wikibase-entityid") continue;
        if (!dv.contains("value") || !dv["value"].is_object()) continue;
        auto& v = dv["value"];
        if (v.value("entity-type", "") != "item") continue;
        std::uint64_t qid = 0;
        if (v.contains("numeric-id") && v["numeric-id"].is_number_unsigned())
          qid = v["numeric-id"].get<std::uint64_t>();
        else if (v.contains("id") && v["id"].is_string())
          qid = id_number(v["id"].get<std::string>(), 'Q');
        if (qid == 0) continue;
        doc.statements.emplace_back(pid, qid, st.value("rank", "normal"));
      }
    }
  }
  return true;
}

}  // namespace oracle_detail

inline OracleResult oracle_extract(std::istream& dump, EntityId topic,
                                   bool label_fallback_any = false) {
  using oracle_detail::Doc;
  OracleResult out;

  std::vector<Doc> items;
  std::map<std::uint64_t, std::size_t> item_by_id;
  std::map<std::uint64_t, std::map<std::string, std::string>> prop_labels;
  std::string line;
  while (std::getline(dump, line)) {
    Doc doc;
    if (!oracle_detail::load_doc(line, doc)) {
      ++out.skipped_lines;
      continue;
    }
    if (doc.is_property) {
      prop_labels[doc.id] = doc.labels;
    } else {
      item_by_id[doc.id] = items.size();
      items.push_back(std::move(doc));
    }
  }

  // Closure: repeated relational join until no change.
  std::set<std::pair<std::uint64_t, std::uint64_t>> subclass_pairs;
  for (const Doc& d : items)
    for (const auto& [pid, qid, rank] : d.statements)
      if (pid == 279 && rank != "deprecated") subclass_pairs.emplace(d.id, qid);
  std::set<std::uint64_t> members = {topic.num};
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [child, parent] : subclass_pairs)
      if (members.count(parent) && !members.count(child)) {
        members.insert(child);
        changed = true;
      }
  }
  for (std::uint64_t m : members) out.closure.insert(EntityId{m});

  // Nodes: any non-deprecated P31 into the closure.
  for (const Doc& d : items)
    for (const auto& [pid, qid, rank] : d.statements)
      if (pid == 31 && rank != "deprecated" && members.count(qid))
        out.nodes.insert(EntityId{d.id});

  // Facts of nodes; edge iff the tail is a node too.
  std::set<Fact> edge_set, attr_set;
  std::set<EntityId> referenced;
  std::set<PropertyId> relations;
  for (const Doc& d : items) {
    if (!out.nodes.count(EntityId{d.id})) continue;
    for (const auto& [pid, qid, rank] : d.statements) {
      if (rank == "deprecated") continue;
      Fact f{EntityId{d.id}, PropertyId{pid}, EntityId{qid}};
      (out.nodes.count(f.tail) ? edge_set : attr_set).insert(f);
      referenced.insert(f.head);
      referenced.insert(f.tail);
      relations.insert(f.relation);
    }
  }
  out.edges.assign(edge_set.begin(), edge_set.end());
  out.attributes.assign(attr_set.begin(), attr_set.end());

  // Labels for every node and referenced id, English preferred.
  std::set<EntityId> want(out.nodes.begin(), out.nodes.end());
  want.insert(referenced.begin(), referenced.end());
  for (EntityId id : want) {
    std::string label = id.str();
    if (auto it = item_by_id.find(id.num); it != item_by_id.end()) {
      const auto& labels = items[it->second].labels;
      if (auto en = labels.find("en"); en != labels.end())
        label = en->second;
      else if (label_fallback_any && !labels.empty())
        label = labels.begin()->second;
    }
    out.entity_labels.emplace(id, std::move(label));
  }
  for (PropertyId pid : relations) {
    std::string label = pid.str();
    if (auto it = prop_labels.find(pid.num); it != prop_labels.end()) {
      if (auto en = it->second.find("en"); en != it->second.end())
        label = en->second;
      else if (label_fallback_any && !it->second.empty())
        label = it->second.begin()->second;
    }
    out.relation_labels.emplace(pid, std::move(label));
  }

  // The seven metadata counts, straight from the definitions.
  out.stats.nodes = out.nodes.size();
  out.stats.edges = out.edges.size();
  std::set<EntityId> in_an_edge;
  for (const Fact& e : out.edges) {
    in_an_edge.insert(e.head);
    in_an_edge.insert(e.tail);
  }
  for (EntityId n : out.nodes)
    if (!in_an_edge.count(n)) ++out.stats.isolated_nodes;
  std::set<EntityId> attr_tails;
  std::set<PropertyId> edge_rels, attr_rels;
  for (const Fact& a : out.attributes) {
    attr_tails.insert(a.tail);
    attr_rels.insert(a.relation);
  }
  for (const Fact& e : out.edges) edge_rels.insert(e.relation);
  out.stats.distinct_attributes = attr_tails.size();
  out.stats.attribute_facts = out.attributes.size();
  out.stats.distinct_relations = edge_rels.size();
  out.stats.distinct_attribute_relations = attr_rels.size();
  return out;
}

inline OracleResult oracle_extract(const std::string& dump_bytes, EntityId topic,
                                   bool label_fallback_any = false) {
  std::istringstream in(dump_bytes);
  return oracle_extract(in, topic, label_fallback_any);
}

}  // namespace wikisub
