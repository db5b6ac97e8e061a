#pragma once
// Partition facts into edges vs attributes, assign stable integer
// indices, and write the six dataset files. Index assignment: nodes
// first by ascending numeric QID, then attribute-only entities by
// ascending numeric QID; relations by ascending numeric PID. Output is
// byte-deterministic.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "wikisub/dump_stream.hpp"
#include "wikisub/extraction.hpp"
#include "wikisub/ids.hpp"

namespace wikisub {

inline constexpr std::string_view kToolVersion = "0.1.0";

struct MissingLabelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IndexedFact {
  std::uint32_t head;
  std::uint32_t tail;
  std::uint32_t relation;

  auto operator<=>(const IndexedFact&) const = default;
};

struct IndexedDataset {
  EntityId topic;
  std::vector<EntityId> entities;       // index -> id; nodes occupy [0, node_count)
  std::size_t node_count = 0;
  std::vector<PropertyId> relations;    // index -> id
  std::vector<IndexedFact> edges;       // sorted by (head, relation, tail)
  std::vector<IndexedFact> attributes;  // same order
  std::vector<std::string> entity_labels;    // parallel to entities
  std::vector<std::string> relation_labels;  // parallel to relations
};

struct StatsReport {
  std::uint64_t nodes = 0;
  std::uint64_t edges = 0;
  std::uint64_t isolated_nodes = 0;
  std::uint64_t distinct_attributes = 0;
  std::uint64_t attribute_facts = 0;
  std::uint64_t distinct_relations = 0;
  std::uint64_t distinct_attribute_relations = 0;

  bool operator==(const StatsReport&) const = default;
};

inline IndexedDataset build_dataset(EntityId topic,
                                    const std::unordered_set<EntityId>& nodes,
                                    const std::vector<Fact>& facts,
                                    const LabelTable& labels) {
  IndexedDataset ds;
  ds.topic = topic;

  std::vector<EntityId> node_ids(nodes.begin(), nodes.end());
  std::sort(node_ids.begin(), node_ids.end());

  // A fact is an edge iff its tail is a node; attribute tails are the
  // attribute-only entities appended after the node segment.
  std::vector<EntityId> attr_only;
  for (const Fact& f : facts)
    if (!nodes.count(f.tail)) attr_only.push_back(f.tail);
  std::sort(attr_only.begin(), attr_only.end());
  attr_only.erase(std::unique(attr_only.begin(), attr_only.end()),
                  attr_only.end());

  ds.entities = std::move(node_ids);
  ds.node_count = ds.entities.size();
  ds.entities.insert(ds.entities.end(), attr_only.begin(), attr_only.end());

  std::unordered_map<EntityId, std::uint32_t> entity_index;
  entity_index.reserve(ds.entities.size());
  for (std::uint32_t i = 0; i < ds.entities.size(); ++i)
    entity_index.emplace(ds.entities[i], i);

  std::vector<PropertyId> rels;
  for (const Fact& f : facts) rels.push_back(f.relation);
  std::sort(rels.begin(), rels.end());
  rels.erase(std::unique(rels.begin(), rels.end()), rels.end());
  ds.relations = std::move(rels);
  std::unordered_map<PropertyId, std::uint32_t> relation_index;
  for (std::uint32_t i = 0; i < ds.relations.size(); ++i)
    relation_index.emplace(ds.relations[i], i);

  for (const Fact& f : facts) {
    IndexedFact row{entity_index.at(f.head), entity_index.at(f.tail),
                    relation_index.at(f.relation)};
    if (row.tail < ds.node_count)
      ds.edges.push_back(row);
    else
      ds.attributes.push_back(row);
  }
  auto by_head_rel_tail = [](const IndexedFact& a, const IndexedFact& b) {
    return std::tie(a.head, a.relation, a.tail) <
           std::tie(b.head, b.relation, b.tail);
  };
  std::sort(ds.edges.begin(), ds.edges.end(), by_head_rel_tail);
  std::sort(ds.attributes.begin(), ds.attributes.end(), by_head_rel_tail);

  auto entity_label = [&](EntityId id) -> std::string {
    auto it = labels.entity_labels.find(id);
    if (it == labels.entity_labels.end())
      throw MissingLabelError("no label for " + id.str() +
                              " (pipeline bug: label table incomplete)");
    return it->second;
  };
  for (EntityId id : ds.entities) ds.entity_labels.push_back(entity_label(id));
  for (PropertyId id : ds.relations) {
    auto it = labels.relation_labels.find(id);
    if (it == labels.relation_labels.end())
      throw MissingLabelError("no label for " + id.str() +
                              " (pipeline bug: label table incomplete)");
    ds.relation_labels.push_back(it->second);
  }
  return ds;
}

inline StatsReport compute_stats(const IndexedDataset& ds) {
  StatsReport s;
  s.nodes = ds.node_count;
  s.edges = ds.edges.size();
  s.attribute_facts = ds.attributes.size();

  std::vector<bool> touched(ds.node_count, false);
  for (const IndexedFact& e : ds.edges) {
    touched[e.head] = true;
    touched[e.tail] = true;
  }
  for (bool t : touched)
    if (!t) ++s.isolated_nodes;

  std::unordered_set<std::uint32_t> attr_tails, edge_rels, attr_rels;
  for (const IndexedFact& a : ds.attributes) {
    attr_tails.insert(a.tail);
    attr_rels.insert(a.relation);
  }
  for (const IndexedFact& e : ds.edges) edge_rels.insert(e.relation);
  s.distinct_attributes = attr_tails.size();
  s.distinct_relations = edge_rels.size();
  s.distinct_attribute_relations = attr_rels.size();
  return s;
}

// Counts over edges only, sorted by count descending, ties broken by
// ascending relation numeric id, truncated to top_k (0 = no truncation).
inline std::vector<std::pair<std::string, std::uint64_t>> edge_type_distribution(
    const IndexedDataset& ds, std::size_t top_k = 0) {
  std::unordered_map<std::uint32_t, std::uint64_t> counts;
  for (const IndexedFact& e : ds.edges) ++counts[e.relation];

  std::vector<std::pair<std::uint32_t, std::uint64_t>> rows(counts.begin(),
                                                            counts.end());
  std::sort(rows.begin(), rows.end(), [&](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return ds.relations[a.first] < ds.relations[b.first];
  });
  if (top_k != 0 && rows.size() > top_k) rows.resize(top_k);

  std::vector<std::pair<std::string, std::uint64_t>> out;
  out.reserve(rows.size());
  for (const auto& [rel, n] : rows) out.emplace_back(ds.relation_labels[rel], n);
  return out;
}

namespace detail {

// Tabs and newlines inside labels would break the TSV contract.
inline std::string sanitize_label(std::string_view label) {
  std::string out(label);
  for (char& c : out)
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  return out;
}

inline std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write: " + path.string());
  return out;
}

inline void write_fact_file(const std::filesystem::path& path,
                            const std::vector<IndexedFact>& rows) {
  auto out = open_output(path);
  out << "headEntity\ttailEntity\trelation\n";
  for (const IndexedFact& r : rows)
    out << r.head << '\t' << r.tail << '\t' << r.relation << '\n';
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace detail

inline std::string render_readme(const IndexedDataset& ds, const StatsReport& s,
                                 std::string_view topic_label) {
  std::string out;
  auto kv = [&](std::string_view key, const std::string& value) {
    out += key;
    out += ": ";
    out += value;
    out += '\n';
  };
  kv("topic", std::string(topic_label));
  kv("topic_qid", ds.topic.str());
  kv("nodes", std::to_string(s.nodes));
  kv("edges", std::to_string(s.edges));
  kv("isolated_nodes", std::to_string(s.isolated_nodes));
  kv("distinct_attributes", std::to_string(s.distinct_attributes));
  kv("attribute_facts", std::to_string(s.attribute_facts));
  kv("distinct_relations", std::to_string(s.distinct_relations));
  kv("distinct_attribute_relations", std::to_string(s.distinct_attribute_relations));
  kv("tool_version", std::string(kToolVersion));
  return out;
}

inline void write_dataset(const IndexedDataset& ds,
                          const std::filesystem::path& out_dir,
                          std::string_view topic_label) {
  std::filesystem::create_directories(out_dir);

  detail::write_fact_file(out_dir / "edges.txt", ds.edges);
  detail::write_fact_file(out_dir / "attributes.txt", ds.attributes);

  {
    auto entities = detail::open_output(out_dir / "entities.txt");
    auto nodes = detail::open_output(out_dir / "nodes.txt");
    entities << "entityID\twikidataID\tlabel\n";
    nodes << "entityID\twikidataID\tlabel\n";
    for (std::size_t i = 0; i < ds.entities.size(); ++i) {
      std::string row = std::to_string(i) + '\t' + ds.entities[i].str() + '\t' +
                        detail::sanitize_label(ds.entity_labels[i]) + '\n';
      entities << row;
      if (i < ds.node_count) nodes << row;
    }
    if (!entities || !nodes) throw IoError("write failed in " + out_dir.string());
  }
  {
    auto rels = detail::open_output(out_dir / "relations.txt");
    rels << "relationID\twikidataID\tlabel\n";
    for (std::size_t i = 0; i < ds.relations.size(); ++i)
      rels << i << '\t' << ds.relations[i].str() << '\t'
           << detail::sanitize_label(ds.relation_labels[i]) << '\n';
    if (!rels) throw IoError("write failed in " + out_dir.string());
  }
  {
    auto readme = detail::open_output(out_dir / "readme.txt");
    readme << render_readme(ds, compute_stats(ds), topic_label);
    if (!readme) throw IoError("write failed in " + out_dir.string());
  }
}

}  // namespace wikisub
