#pragma once
// Topic class hierarchy: collect child-P279-parent pairs from a dump
// pass, compute the transitive closure under reversed subclass edges,
// and cache the result as a TSV file.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <fstream>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "wikisub/entity.hpp"
#include "wikisub/ids.hpp"
#include "wikisub/parallel.hpp"

namespace wikisub {

struct SubclassEdgeSet {
  // (child, parent) meaning child P279 parent.
  std::set<std::pair<EntityId, EntityId>> edges;
};

struct ClassClosure {
  EntityId topic;
  std::unordered_set<EntityId> members;  // always contains topic

  bool contains(EntityId id) const { return members.count(id) != 0; }
};

struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct TopicMismatchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

struct SubclassCollector {
  SubclassEdgeSet local;
  std::uint64_t lines = 0;

  void on_line(const std::string& line) {
    ++lines;
    auto outcome = parse_entity_line(line);
    auto* rec = std::get_if<EntityRecord>(&outcome);
    if (!rec || rec->is_property) return;
    for (const Claim& c : rec->claims)
      if (c.property == kSubclassOf && c.rank != ClaimRank::deprecated)
        local.edges.emplace(rec->entity_id(), c.target);
  }
};

}  // namespace detail

inline SubclassEdgeSet collect_subclass_edges(const DumpSource& src,
                                              unsigned workers = 1) {
  auto locals = parallel_scan(src, workers, [] { return detail::SubclassCollector{}; });
  SubclassEdgeSet merged;
  for (auto& l : locals)
    merged.edges.merge(l.local.edges);  // set union, order independent
  return merged;
}

// Least fixed point containing the topic and closed under
// child-of-member. Visited-set BFS, so cyclic P279 edges terminate.
inline ClassClosure compute_closure(EntityId topic, const SubclassEdgeSet& set) {
  std::unordered_map<EntityId, std::vector<EntityId>> children;  // parent -> kids
  for (const auto& [child, parent] : set.edges)
    children[parent].push_back(child);

  ClassClosure closure{topic, {topic}};
  std::deque<EntityId> frontier{topic};
  while (!frontier.empty()) {
    EntityId cur = frontier.front();
    frontier.pop_front();
    auto it = children.find(cur);
    if (it == children.end()) continue;
    for (EntityId kid : it->second)
      if (closure.members.insert(kid).second) frontier.push_back(kid);
  }
  return closure;
}

// Cache file: line 1 "topic\t<QID>", then one member QID per line,
// sorted by numeric id, trailing newline.
inline void save_closure_file(const ClassClosure& closure,
                              const std::filesystem::path& path) {
  std::vector<EntityId> members(closure.members.begin(), closure.members.end());
  std::sort(members.begin(), members.end());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write closure cache: " + path.string());
  out << "topic\t" << closure.topic.str() << "\n";
  for (EntityId m : members) out << m.str() << "\n";
  if (!out) throw IoError("write failed: " + path.string());
}

inline ClassClosure load_closure_file(const std::filesystem::path& path,
                                      EntityId expected_topic) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFoundError("closure cache not found: " + path.string());
  std::string line;
  if (!std::getline(in, line))
    throw FormatError(path.string() + ":1: empty closure cache");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line.rfind("topic\t", 0) != 0)
    throw FormatError(path.string() + ":1: expected 'topic\\t<QID>' header");
  auto topic = EntityId::parse(line.substr(6));
  if (!topic)
    throw FormatError(path.string() + ":1: bad topic id '" + line.substr(6) + "'");
  if (*topic != expected_topic)
    throw TopicMismatchError("closure cache is for " + topic->str() +
                             ", requested topic is " + expected_topic.str());

  ClassClosure closure{*topic, {*topic}};
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto id = EntityId::parse(line);
    if (!id)
      throw FormatError(path.string() + ":" + std::to_string(lineno) +
                        ": bad member id '" + line + "'");
    closure.members.insert(*id);  // duplicates collapse, set semantics
  }
  return closure;
}

}  // namespace wikisub
