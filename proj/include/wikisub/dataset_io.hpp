#pragma once
// Reads a written dataset directory back into an IndexedDataset so the
// stats command can recompute every count from the files alone.

#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "wikisub/dataset.hpp"
#include "wikisub/hierarchy.hpp"

namespace wikisub {

namespace detail {

inline std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

inline std::uint64_t parse_u64(const std::string& s,
                               const std::filesystem::path& file,
                               std::size_t lineno) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw FormatError(file.string() + ":" + std::to_string(lineno) +
                      ": expected integer, got '" + s + "'");
  return v;
}

inline std::vector<IndexedFact> read_fact_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFoundError("missing dataset file: " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "headEntity\ttailEntity\trelation")
    throw FormatError(path.string() + ":1: bad header");
  std::vector<IndexedFact> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto cols = split_tabs(line);
    if (cols.size() != 3)
      throw FormatError(path.string() + ":" + std::to_string(lineno) +
                        ": expected 3 columns");
    rows.push_back(IndexedFact{
        static_cast<std::uint32_t>(parse_u64(cols[0], path, lineno)),
        static_cast<std::uint32_t>(parse_u64(cols[1], path, lineno)),
        static_cast<std::uint32_t>(parse_u64(cols[2], path, lineno))});
  }
  return rows;
}

}  // namespace detail

struct ReadmeData {
  std::map<std::string, std::string> entries;  // in file order semantics lost; key lookup

  std::uint64_t count(const std::string& key) const {
    auto it = entries.find(key);
    if (it == entries.end()) throw FormatError("readme.txt: missing key '" + key + "'");
    return std::stoull(it->second);
  }
};

inline ReadmeData read_readme(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFoundError("missing dataset file: " + path.string());
  ReadmeData data;
  std::string line;
  while (std::getline(in, line)) {
    auto colon = line.find(": ");
    if (colon == std::string::npos) continue;
    data.entries[line.substr(0, colon)] = line.substr(colon + 2);
  }
  return data;
}

inline IndexedDataset read_dataset(const std::filesystem::path& dir) {
  IndexedDataset ds;

  auto entities_path = dir / "entities.txt";
  std::ifstream in(entities_path, std::ios::binary);
  if (!in) throw NotFoundError("missing dataset file: " + entities_path.string());
  std::string line;
  if (!std::getline(in, line) || line != "entityID\twikidataID\tlabel")
    throw FormatError(entities_path.string() + ":1: bad header");
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto cols = detail::split_tabs(line);
    if (cols.size() != 3)
      throw FormatError(entities_path.string() + ":" + std::to_string(lineno) +
                        ": expected 3 columns");
    auto id = EntityId::parse(cols[1]);
    if (!id)
      throw FormatError(entities_path.string() + ":" + std::to_string(lineno) +
                        ": bad QID '" + cols[1] + "'");
    ds.entities.push_back(*id);
    ds.entity_labels.push_back(cols[2]);
  }

  {
    auto nodes_path = dir / "nodes.txt";
    std::ifstream nodes(nodes_path, std::ios::binary);
    if (!nodes) throw NotFoundError("missing dataset file: " + nodes_path.string());
    std::string l;
    if (!std::getline(nodes, l) || l != "entityID\twikidataID\tlabel")
      throw FormatError(nodes_path.string() + ":1: bad header");
    std::size_t count = 0;
    while (std::getline(nodes, l))
      if (!l.empty()) ++count;
    ds.node_count = count;
  }

  {
    auto rel_path = dir / "relations.txt";
    std::ifstream rels(rel_path, std::ios::binary);
    if (!rels) throw NotFoundError("missing dataset file: " + rel_path.string());
    std::string l;
    if (!std::getline(rels, l) || l != "relationID\twikidataID\tlabel")
      throw FormatError(rel_path.string() + ":1: bad header");
    std::size_t ln = 1;
    while (std::getline(rels, l)) {
      ++ln;
      if (l.empty()) continue;
      auto cols = detail::split_tabs(l);
      if (cols.size() != 3)
        throw FormatError(rel_path.string() + ":" + std::to_string(ln) +
                          ": expected 3 columns");
      auto id = PropertyId::parse(cols[1]);
      if (!id)
        throw FormatError(rel_path.string() + ":" + std::to_string(ln) +
                          ": bad PID '" + cols[1] + "'");
      ds.relations.push_back(*id);
      ds.relation_labels.push_back(cols[2]);
    }
  }

  ds.edges = detail::read_fact_file(dir / "edges.txt");
  ds.attributes = detail::read_fact_file(dir / "attributes.txt");

  auto readme = read_readme(dir / "readme.txt");
  if (auto it = readme.entries.find("topic_qid"); it != readme.entries.end())
    if (auto id = EntityId::parse(it->second)) ds.topic = *id;
  return ds;
}

}  // namespace wikisub
